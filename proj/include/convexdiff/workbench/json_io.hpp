#pragma once

// JSON encoding of scalars, vectors, polytopes and max-affine functions.
//
// A polytope is {"dim": d, "vertices": [[...], ...]}. Scalars are JSON numbers
// or strings ("3", "-1/2", "0.25"); one value may not mix the two forms.
// Exact values are written as strings and doubles as numbers.

#include <json.hpp>

#include <string>
#include <vector>

#include "convexdiff/eps_subdiff.hpp"
#include "convexdiff/polytope.hpp"

namespace convexdiff::workbench {

using Json = nlohmann::ordered_json;

struct Diagnostic {
  std::string path;  // JSON pointer into the scenario document
  std::string message;

  std::string str() const { return (path.empty() ? std::string("/") : path) + ": " + message; }
};

class ParseError : public InvalidArgument {
 public:
  ParseError(std::string path, std::string message)
      : InvalidArgument((path.empty() ? std::string("/") : path) + ": " + message),
        diag_{std::move(path), std::move(message)} {}

  const Diagnostic& diagnostic() const { return diag_; }

 private:
  Diagnostic diag_;
};

inline std::string child(const std::string& path, const std::string& key) { return path + "/" + key; }
inline std::string child(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

// Records the scalar form seen inside one value and rejects a second form.
class FormGuard {
 public:
  void note(bool is_string, const std::string& path) {
    int form = is_string ? 2 : 1;
    if (form_ == 0) {
      form_ = form;
      first_ = path;
    } else if (form_ != form) {
      throw ParseError(path, "mixes JSON numbers and \"p/q\" strings (first scalar at " + first_ + ")");
    }
  }

 private:
  int form_ = 0;
  std::string first_;
};

template <class T>
T parse_scalar(const Json& j, const std::string& path, FormGuard* guard = nullptr) {
  try {
    if (j.is_string()) {
      if (guard) guard->note(true, path);
      return Num<T>::parse(j.get<std::string>());
    }
    if (j.is_number()) {
      if (guard) guard->note(false, path);
      if (j.is_number_integer() || j.is_number_unsigned()) return Num<T>::parse(j.dump());
      return Num<T>::from_double(j.get<double>());
    }
  } catch (const ParseError&) {
    throw;
  } catch (const InvalidArgument& e) {
    throw ParseError(path, e.what());
  }
  throw ParseError(path, "expected a number or a \"p/q\" string");
}

inline long long parse_integer(const Json& j, const std::string& path, long long lo, long long hi) {
  if (!j.is_number_integer()) throw ParseError(path, "expected an integer");
  if (j.is_number_unsigned() && j.get<unsigned long long>() > static_cast<unsigned long long>(hi))
    throw ParseError(path, "must be at most " + std::to_string(hi));
  long long v = j.get<long long>();
  if (v < lo) throw ParseError(path, "must be at least " + std::to_string(lo));
  if (v > hi) throw ParseError(path, "must be at most " + std::to_string(hi));
  return v;
}

template <class T>
Vec<T> parse_vector(const Json& j, const std::string& path, FormGuard& guard, std::size_t expected_dim = 0) {
  if (!j.is_array()) throw ParseError(path, "expected an array of coordinates");
  if (j.empty()) throw ParseError(path, "expected at least one coordinate");
  if (expected_dim != 0 && j.size() != expected_dim)
    throw ParseError(path, "expected " + std::to_string(expected_dim) + " coordinates, got " + std::to_string(j.size()));
  std::vector<T> c;
  for (std::size_t i = 0; i < j.size(); ++i) c.push_back(parse_scalar<T>(j[i], child(path, i), &guard));
  return Vec<T>(std::move(c));
}

template <class T>
Vec<T> parse_vector(const Json& j, const std::string& path) {
  FormGuard guard;
  return parse_vector<T>(j, path, guard);
}

template <class T>
std::vector<Vec<T>> parse_vector_list(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) throw ParseError(path, "expected a nonempty array of vectors");
  FormGuard guard;
  std::vector<Vec<T>> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(parse_vector<T>(j[i], child(path, i), guard, out.empty() ? 0 : out[0].dim()));
  return out;
}

template <class T>
Polytope<T> parse_polytope(const Json& j, const std::string& path) {
  if (!j.is_object()) throw ParseError(path, "expected a polytope object {\"dim\", \"vertices\"}");
  for (const auto& [key, value] : j.items())
    if (key != "dim" && key != "vertices") throw ParseError(child(path, key), "unknown polytope field");
  if (!j.contains("dim")) throw ParseError(path, "missing field \"dim\"");
  if (!j.contains("vertices")) throw ParseError(path, "missing field \"vertices\"");
  auto d = static_cast<std::size_t>(parse_integer(j["dim"], child(path, "dim"), 1, 64));
  const auto& vs = j["vertices"];
  const auto vpath = child(path, "vertices");
  if (!vs.is_array() || vs.empty()) throw ParseError(vpath, "expected a nonempty array of vertices");
  FormGuard guard;
  std::vector<Vec<T>> pts;
  for (std::size_t i = 0; i < vs.size(); ++i) pts.push_back(parse_vector<T>(vs[i], child(vpath, i), guard, d));
  return Polytope<T>::hull(std::move(pts));
}

template <class T>
PWLConvexFunction<T> parse_function(const Json& j, const std::string& path) {
  if (!j.is_object() || !j.contains("pieces")) throw ParseError(path, "expected a function object {\"pieces\"}");
  for (const auto& [key, value] : j.items())
    if (key != "pieces") throw ParseError(child(path, key), "unknown function field");
  const auto& ps = j["pieces"];
  const auto ppath = child(path, "pieces");
  if (!ps.is_array() || ps.empty()) throw ParseError(ppath, "expected a nonempty array of pieces");
  FormGuard guard;
  std::vector<AffinePiece<T>> pieces;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const auto ip = child(ppath, i);
    const auto& p = ps[i];
    if (!p.is_object() || !p.contains("a") || !p.contains("b")) throw ParseError(ip, "expected a piece {\"a\", \"b\"}");
    for (const auto& [key, value] : p.items())
      if (key != "a" && key != "b") throw ParseError(child(ip, key), "unknown piece field");
    auto a = parse_vector<T>(p["a"], child(ip, "a"), guard, pieces.empty() ? 0 : pieces[0].a.dim());
    auto b = parse_scalar<T>(p["b"], child(ip, "b"), &guard);
    pieces.push_back({std::move(a), std::move(b)});
  }
  return PWLConvexFunction<T>(std::move(pieces));
}

template <class T>
Json to_json(const T& v) {
  if constexpr (Num<T>::exact)
    return Num<T>::format(v);
  else
    return v;
}

template <class T>
Json to_json(const Vec<T>& v) {
  Json out = Json::array();
  for (const auto& c : v) out.push_back(to_json(c));
  return out;
}

template <class T>
Json to_json(const Polytope<T>& x) {
  Json vs = Json::array();
  for (const auto& v : x.vertices()) vs.push_back(to_json(v));
  return Json{{"dim", x.dim()}, {"vertices", std::move(vs)}};
}

template <class T>
Json to_json(const PWLConvexFunction<T>& f) {
  Json ps = Json::array();
  for (const auto& p : f.pieces()) ps.push_back(Json{{"a", to_json(p.a)}, {"b", to_json(p.b)}});
  return Json{{"pieces", std::move(ps)}};
}

template <class T>
Json to_json(const std::optional<Polytope<T>>& x) {
  return x ? to_json(*x) : Json(nullptr);
}

template <class T>
Json to_json(const std::vector<Vec<T>>& vs) {
  Json out = Json::array();
  for (const auto& v : vs) out.push_back(to_json(v));
  return out;
}

}  // namespace convexdiff::workbench
