// Copyright 2026 The trsys Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Exit codes: 0 pass, 1 verification mismatch,
// 2 usage error, 3 guard breach.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "trsys/trsys.h"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;
constexpr int kExitGuard = 3;

using Json = nlohmann::ordered_json;

struct Failure {
  int exit_code;
  std::string message;
};

int exit_for(trs_status s) {
  switch (s) {
    case TRS_SIZE_LIMIT:
      return kExitGuard;
    case TRS_INVARIANT_VIOLATION:
    case TRS_CLASSIFICATION_GAP:
    case TRS_INTERNAL:
      return kExitMismatch;
    default:
      return kExitUsage;
  }
}

void check(trs_status s) {
  if (s != TRS_OK) throw Failure{exit_for(s), trs_last_error()};
}

struct StringDeleter {
  void operator()(char* s) const { trs_string_free(s); }
};
using CString = std::unique_ptr<char, StringDeleter>;

std::string take(char* s) {
  CString owned(s);
  return owned ? std::string(owned.get()) : std::string();
}

struct LatticeDeleter {
  void operator()(trs_lattice* l) const { trs_lattice_free(l); }
};
using LatticeHandle = std::unique_ptr<trs_lattice, LatticeDeleter>;

struct CollectionDeleter {
  void operator()(trs_collection* c) const { trs_collection_free(c); }
};
using CollectionHandle = std::unique_ptr<trs_collection, CollectionDeleter>;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kExitUsage, "cannot read " + path};
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

LatticeHandle lattice_from_file(const std::string& path) {
  const std::string text = read_file(path);
  trs_lattice* out = nullptr;
  const trs_status s = trs_lattice_from_json(text.c_str(), &out);
  if (s != TRS_OK) throw Failure{exit_for(s), path + ": " + trs_last_error()};
  return LatticeHandle(out);
}

// Lattice source and shared job options.
struct JobSpec {
  std::string family;
  std::optional<std::uint64_t> n, m, p;
  std::string file;
  std::string format = "json";
  std::string out;
  std::size_t jobs = 1;
  bool unsafe_guard = false;

  void add_source(CLI::App* cmd) {
    cmd->add_option("--family", family, "chain|cube|rect|fuse2|subcpcp|json")
        ->check(CLI::IsMember({"chain", "cube", "rect", "fuse2", "subcpcp", "json"}))
        ->required();
    cmd->add_option("--n", n, "size parameter");
    cmd->add_option("--m", m, "first side of a rectangle");
    cmd->add_option("--p", p, "prime for subcpcp");
    cmd->add_option("--file", file, "lattice JSON for --family json");
  }
  void add_run(CLI::App* cmd) {
    cmd->add_option("--out", out, "output path (default: stdout)");
    cmd->add_option("--jobs", jobs, "worker threads")->check(CLI::Range(1, 256));
    cmd->add_flag("--unsafe-guard", unsafe_guard, "lift the 26-pair enumeration guard");
  }

  trs_enum_options options() const {
    trs_enum_options o{};
    o.jobs = jobs;
    o.max_pairs = unsafe_guard ? std::numeric_limits<std::size_t>::max() : 0;
    return o;
  }

  LatticeHandle lattice() const {
    auto need = [&](const std::optional<std::uint64_t>& v, const char* flag) {
      if (!v) throw Failure{kExitUsage, "--family " + family + " needs " + flag};
      return *v;
    };
    if (family == "json") {
      if (file.empty()) throw Failure{kExitUsage, "--family json needs --file"};
      return lattice_from_file(file);
    }
    if (!file.empty()) throw Failure{kExitUsage, "--file is only used with --family json"};
    std::uint64_t a = 0, b = 0;
    if (family == "rect") {
      a = need(m, "--m");
      b = need(n, "--n");
    } else if (family == "subcpcp") {
      b = need(p, "--p");
    } else {
      b = need(n, "--n");
    }
    trs_lattice* out = nullptr;
    check(trs_lattice_family(family.c_str(), a, b, &out));
    return LatticeHandle(out);
  }
};

// Writes to --out or stdout.
class Sink {
 public:
  explicit Sink(const std::string& path) : path_(path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw Failure{kExitUsage, "cannot write " + path};
    }
  }
  std::ostream& os() { return path_.empty() ? std::cout : file_; }
  void close() {
    if (!path_.empty()) {
      file_.close();
      if (!file_) throw Failure{kExitUsage, "cannot write " + path_};
    }
  }

 private:
  std::string path_;
  std::ofstream file_;
};

std::string pair_text(const Json& names, const Json& pairs) {
  if (pairs.empty()) return "{}";
  std::string s;
  for (const auto& pr : pairs) {
    if (!s.empty()) s += ", ";
    s += names[pr[0].get<std::size_t>()].get<std::string>() + "->" +
         names[pr[1].get<std::size_t>()].get<std::string>();
  }
  return s;
}

trs_kind parse_kind(const std::string& kind) {
  if (kind == "transfer") return TRS_KIND_TRANSFER;
  if (kind == "saturated") return TRS_KIND_SATURATED;
  if (kind == "covers") return TRS_KIND_COVERS;
  return TRS_KIND_INTERIOR;
}

int cmd_enumerate(const JobSpec& spec, const std::string& kind, const std::string& report) {
  const LatticeHandle lat = spec.lattice();
  const trs_enum_options opts = spec.options();
  Sink sink(spec.out);
  std::ostream& os = sink.os();

  if (report == "fibers") {
    const Json fibers = Json::parse(take([&] {
      char* s = nullptr;
      check(trs_fiber_report(lat.get(), &opts, &s));
      return s;
    }()));
    if (spec.format == "json") {
      os << fibers.dump() << "\n";
    } else if (spec.format == "table") {
      const Json names = Json::parse(take([&] {
        char* s = nullptr;
        check(trs_lattice_to_json(lat.get(), &s));
        return s;
      }()))["names"];
      os << "operator\tsize\tleast\tgreatest\n";
      for (const auto& f : fibers) {
        std::string image;
        for (const auto& v : f["operator"]) image += (image.empty() ? "" : " ") + names[v.get<std::size_t>()].get<std::string>();
        os << "[" << image << "]\t" << f["size"].get<std::size_t>() << "\t"
           << pair_text(names, f["least_pairs"]) << "\t" << pair_text(names, f["greatest_pairs"]) << "\n";
      }
      os << "fibers: " << fibers.size() << "\n";
    } else {
      throw Failure{kExitUsage, "--report fibers supports json and table"};
    }
    sink.close();
    return kExitPass;
  }

  trs_collection* raw = nullptr;
  check(trs_enumerate(lat.get(), parse_kind(kind), &opts, &raw));
  const CollectionHandle items(raw);
  const std::size_t count = trs_collection_size(items.get());
  Json names;
  if (spec.format == "table") {
    names = Json::parse(take([&] {
      char* s = nullptr;
      check(trs_lattice_to_json(lat.get(), &s));
      return s;
    }()))["names"];
    os << "# " << kind << ": " << count << " items\n";
  }
  for (std::size_t i = 0; i < count; ++i) {
    check(trs_collection_validate(items.get(), i));
    if (spec.format == "dot") {
      char* s = nullptr;
      check(trs_collection_item_dot(items.get(), i, &s));
      os << take(s);
      continue;
    }
    char* s = nullptr;
    check(trs_collection_item_json(items.get(), i, &s));
    const std::string text = take(s);
    if (spec.format == "json") {
      os << text << "\n";
      continue;
    }
    const Json item = Json::parse(text);
    os << i << "\t";
    if (item.contains("pairs")) {
      os << pair_text(names, item["pairs"]);
    } else if (item.contains("edges")) {
      os << pair_text(names, item["edges"]);
    } else {
      std::string image;
      for (const auto& v : item["image"]) image += (image.empty() ? "" : " ") + names[v.get<std::size_t>()].get<std::string>();
      os << "[" << image << "]";
    }
    os << "\n";
  }
  sink.close();
  return kExitPass;
}

int cmd_verify(const std::vector<std::string>& checks, std::optional<std::size_t> max, std::size_t jobs,
               std::uint64_t seed, const std::string& out) {
  std::vector<std::string> names = checks;
  if (names.empty()) {
    char* s = nullptr;
    check(trs_verify_checks(&s));
    names = Json::parse(take(s)).get<std::vector<std::string>>();
  }
  trs_verify_options opts{};
  opts.has_max = max.has_value();
  opts.max = max.value_or(0);
  opts.jobs = jobs;
  opts.seed = seed;
  Sink sink(out);
  std::ostream& os = sink.os();
  bool all = true;
  for (const auto& name : names) {
    int passed = 0;
    char* report = nullptr;
    check(trs_verify_run(name.c_str(), &opts, &passed, &report));
    std::istringstream lines(take(report));
    for (std::string line; std::getline(lines, line);) os << "  " << line << "\n";
    os << (passed ? "PASS " : "FAIL ") << name << "\n" << std::flush;
    all = all && passed;
  }
  sink.close();
  return all ? kExitPass : kExitMismatch;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  f << text;
  if (!f) throw Failure{kExitUsage, "cannot write " + path.string()};
}

int cmd_export(const JobSpec& spec, const std::string& what) {
  const LatticeHandle lat = spec.lattice();
  const trs_enum_options opts = spec.options();
  if (what == "lattice" || what == "tr") {
    char* s = nullptr;
    if (what == "lattice" && spec.format == "json") {
      check(trs_lattice_to_json(lat.get(), &s));
    } else if (spec.format != "dot") {
      throw Failure{kExitUsage, "--format json is only available for --kind lattice"};
    } else {
      check(what == "lattice" ? trs_lattice_to_dot(lat.get(), &s) : trs_tr_hasse_dot(lat.get(), &opts, &s));
    }
    Sink sink(spec.out);
    sink.os() << take(s) << (spec.format == "json" ? "\n" : "");
    sink.close();
    return kExitPass;
  }
  trs_collection* raw = nullptr;
  check(trs_enumerate(lat.get(), parse_kind(what), &opts, &raw));
  const CollectionHandle items(raw);
  const std::size_t count = trs_collection_size(items.get());
  std::error_code ec;
  if (!spec.out.empty()) {
    std::filesystem::create_directories(spec.out, ec);
    if (ec) throw Failure{kExitUsage, "cannot create " + spec.out + ": " + ec.message()};
  }
  for (std::size_t i = 0; i < count; ++i) {
    check(trs_collection_validate(items.get(), i));
    char* s = nullptr;
    check(trs_collection_item_dot(items.get(), i, &s));
    const std::string text = take(s);
    if (spec.out.empty()) {
      std::cout << text;
    } else {
      char name[32];
      std::snprintf(name, sizeof name, "%s_%03zu.dot", what.c_str(), i);
      write_text(std::filesystem::path(spec.out) / name, text);
    }
  }
  if (!spec.out.empty()) std::cout << "wrote " << count << " files to " << spec.out << "\n";
  return kExitPass;
}

int cmd_fusion_count(const std::string& left, const std::string& right, const JobSpec& spec) {
  const LatticeHandle p = lattice_from_file(left);
  const LatticeHandle q = lattice_from_file(right);
  const trs_enum_options opts = spec.options();
  char* s = nullptr;
  check(trs_fusion_count(p.get(), q.get(), &opts, &s));
  const Json b = Json::parse(take(s));
  Sink sink(spec.out);
  std::ostream& os = sink.os();
  if (spec.format == "json") {
    os << b.dump() << "\n";
  } else {
    os << "top term     |Tr(P-top)||Tr(Q-top)|         " << b["top_term"].get<std::string>() << "\n";
    os << "bottom term  |Tr(P-bottom)||Tr(Q-bottom)|   " << b["bottom_term"].get<std::string>() << "\n";
    for (const char* side : {"middle_terms_p", "middle_terms_q"}) {
      for (const auto& t : b[side]) {
        os << (side[13] == 'p' ? "middle P " : "middle Q ") << t["name"].get<std::string>()
           << "   |Tr_a| = " << t["fibrant_count"].get<std::string>() << "   term "
           << t["term"].get<std::string>() << "\n";
      }
    }
    os << "total        " << b["total"].get<std::string>() << "\n";
  }
  sink.close();
  return kExitPass;
}

int cmd_rank_two(std::uint64_t p, const JobSpec& spec) {
  const trs_enum_options opts = spec.options();
  char* s = nullptr;
  check(trs_rank_two(p, &opts, &s));
  const Json r = Json::parse(take(s));
  Sink sink(spec.out);
  std::ostream& os = sink.os();
  if (spec.format == "json") {
    os << r.dump() << "\n";
  } else {
    os << "p            " << p << "\n";
    os << "2^(p+2)+p+1  " << r["closed_form"].get<std::string>() << "\n";
    if (r["census"].is_null()) {
      os << "census       skipped (enumeration guard)\n";
    } else {
      const auto& c = r["census"];
      os << "census       B " << c["bottom"] << ", M " << c["middle"] << ", T " << c["top"] << ", total "
         << c["total"] << (c["agrees"].get<bool>() ? " (agrees)" : " (MISMATCH)") << "\n";
    }
  }
  sink.close();
  if (!r["census"].is_null() && !r["census"]["agrees"].get<bool>()) return kExitMismatch;
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"trsys: transfer systems on finite lattices"};
  app.require_subcommand(1);

  JobSpec enum_spec;
  std::string kind = "transfer", report;
  auto* en = app.add_subcommand("enumerate", "enumerate transfer systems, covers or interior operators");
  enum_spec.add_source(en);
  enum_spec.add_run(en);
  en->add_option("--kind", kind)->check(CLI::IsMember({"transfer", "saturated", "covers", "interior"}));
  en->add_option("--format", enum_spec.format)->check(CLI::IsMember({"json", "dot", "table"}));
  en->add_option("--report", report)->check(CLI::IsMember({"fibers"}));
  en->add_option("--seed", [](const CLI::results_t&) { return true; }, "accepted for uniformity; unused");

  std::vector<std::string> checks;
  std::optional<std::size_t> max;
  std::size_t verify_jobs = 1;
  std::uint64_t seed = 1;
  std::string verify_out;
  auto* ve = app.add_subcommand("verify", "run the regression suite of known counts");
  ve->add_option("--check", checks, "check name (repeatable); default all");
  ve->add_option("--max", max, "upper size for sweeping checks");
  ve->add_option("--jobs", verify_jobs)->check(CLI::Range(1, 256));
  ve->add_option("--seed", seed, "seed for sampled checks");
  ve->add_option("--out", verify_out);

  JobSpec export_spec;
  export_spec.format = "dot";
  std::string what = "lattice";
  auto* ex = app.add_subcommand("export", "write Graphviz DOT drawings");
  export_spec.add_source(ex);
  export_spec.add_run(ex);
  ex->add_option("--kind", what, "lattice|tr|transfer|saturated|covers")
      ->check(CLI::IsMember({"lattice", "tr", "transfer", "saturated", "covers"}));
  ex->add_option("--format", export_spec.format, "dot, or json for --kind lattice")
      ->check(CLI::IsMember({"dot", "json"}));

  JobSpec fusion_spec;
  std::string left, right;
  auto* fc = app.add_subcommand("fusion-count", "count Tr(P*Q) term by term");
  fc->add_option("--left", left, "lattice JSON for P")->required();
  fc->add_option("--right", right, "lattice JSON for Q")->required();
  fc->add_option("--format", fusion_spec.format)->check(CLI::IsMember({"json", "table"}));
  fusion_spec.add_run(fc);

  JobSpec rank_spec;
  rank_spec.format = "table";
  std::uint64_t prime = 0;
  auto* rt = app.add_subcommand("rank-two", "closed form and block census for Sub(C_p x C_p)");
  rt->add_option("--p", prime)->required();
  rt->add_option("--format", rank_spec.format)->check(CLI::IsMember({"json", "table"}));
  rank_spec.add_run(rt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*en) return cmd_enumerate(enum_spec, kind, report);
    if (*ve) return cmd_verify(checks, max, verify_jobs, seed, verify_out);
    if (*ex) return cmd_export(export_spec, what);
    if (*fc) return cmd_fusion_count(left, right, fusion_spec);
    if (*rt) return cmd_rank_two(prime, rank_spec);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
