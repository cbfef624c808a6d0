#pragma once

// The run / validate / demo commands behind the convexdiff executable.

#include <charconv>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <unistd.h>

#include "convexdiff/bundled_scenarios.hpp"
#include "convexdiff/workbench/runner.hpp"

namespace convexdiff::workbench {

namespace fs = std::filesystem;

class IoError : public Error {
 public:
  using Error::Error;
};

// Writes to a temporary sibling and renames it over `path`.
inline void write_atomic(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open " + tmp.string() + " for writing");
    f << content;
    f.flush();
    if (!f) throw IoError("cannot write " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw IoError("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
  }
}

inline std::string read_file(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot read " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

struct CommandOptions {
  std::size_t jobs = 1;
  std::optional<Arithmetic> arithmetic;
  fs::path out_dir = ".";
  bool quiet = false;
};

// CONVEXDIFF_SEED, when set, replaces the scenario seed.
inline std::optional<std::uint64_t> seed_from_env() {
  const char* v = std::getenv("CONVEXDIFF_SEED");
  if (!v || !*v) return std::nullopt;
  std::uint64_t seed = 0;
  auto [p, ec] = std::from_chars(v, v + std::strlen(v), seed);
  if (ec != std::errc() || *p != '\0') throw ValidationFailed("$CONVEXDIFF_SEED", "expected an unsigned integer");
  return seed;
}

inline Json parse_document(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ValidationFailed("", e.what());
  }
}

inline void print_diagnostics(const std::vector<Diagnostic>& diags, const std::string& origin, std::ostream& err) {
  for (const auto& d : diags) err << origin << ": " << d.str() << "\n";
}

// Runs one scenario document and writes its outputs under opt.out_dir.
inline int run_document(const Json& doc, const std::string& origin, const CommandOptions& opt, std::ostream& out,
                        std::ostream& err) {
  try {
    ScenarioOverrides ov{opt.arithmetic, seed_from_env()};
    auto s = load_scenario(doc, ov);
    auto r = execute(s, RunOptions{opt.jobs});
    const auto report_path = opt.out_dir / s.report_path;
    write_atomic(report_path, report_text(r.report));
    if (r.svg) write_atomic(opt.out_dir / *s.svg_path, *r.svg);
    if (!opt.quiet) {
      out << origin << ": " << r.report["status"].get<std::string>() << ", report " << report_path.string();
      if (r.svg) out << ", svg " << (opt.out_dir / *s.svg_path).string();
      out << "\n";
    }
    if (r.exit_code != kOk) {
      if (!r.report["error"].is_null()) err << origin << ": " << r.report["error"].get<std::string>() << "\n";
      for (const auto& c : r.report["checks"])
        if (!c["pass"].get<bool>()) err << origin << ": check failed: " << c["name"].get<std::string>() << "\n";
    }
    return r.exit_code;
  } catch (const ValidationFailed& e) {
    print_diagnostics(e.diagnostics(), origin, err);
    return kInvalid;
  } catch (const IoError& e) {
    err << origin << ": " << e.what() << "\n";
    return kIoError;
  } catch (const fs::filesystem_error& e) {
    err << origin << ": " << e.what() << "\n";
    return kIoError;
  } catch (const BudgetExceeded& e) {
    err << origin << ": " << e.what() << "\n";
    return kFailed;
  } catch (const InvalidArgument& e) {
    err << origin << ": " << e.what() << "\n";
    return kInvalid;
  } catch (const DimensionMismatch& e) {
    err << origin << ": " << e.what() << "\n";
    return kInvalid;
  } catch (const UnsupportedDimension& e) {
    err << origin << ": " << e.what() << "\n";
    return kInvalid;
  } catch (const Error& e) {
    err << origin << ": " << e.what() << "\n";
    return kFailed;
  }
}

inline int run_command(const fs::path& path, const CommandOptions& opt, std::ostream& out, std::ostream& err) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const IoError& e) {
    err << e.what() << "\n";
    return kIoError;
  }
  try {
    return run_document(parse_document(text), path.string(), opt, out, err);
  } catch (const ValidationFailed& e) {
    print_diagnostics(e.diagnostics(), path.string(), err);
    return kInvalid;
  }
}

inline int validate_command(const fs::path& path, const CommandOptions& opt, std::ostream& out, std::ostream& err) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const IoError& e) {
    err << e.what() << "\n";
    return kIoError;
  }
  try {
    auto diags = validate(parse_document(text), {opt.arithmetic, seed_from_env()});
    if (diags.empty()) {
      if (!opt.quiet) out << path.string() << ": valid\n";
      return kOk;
    }
    print_diagnostics(diags, path.string(), err);
  } catch (const ValidationFailed& e) {
    print_diagnostics(e.diagnostics(), path.string(), err);
  }
  return kInvalid;
}

inline std::optional<std::string_view> bundled_scenario(std::string_view name) {
  for (const auto& [n, text] : kBundledScenarios)
    if (n == name) return text;
  return std::nullopt;
}

inline int demo_command(const std::string& name, const CommandOptions& opt, std::ostream& out, std::ostream& err) {
  auto text = bundled_scenario(name);
  if (!text) {
    err << "unknown demo \"" << name << "\"\n";
    return kInvalid;
  }
  return run_document(Json::parse(*text), "demo " + name, opt, out, err);
}

}  // namespace convexdiff::workbench
