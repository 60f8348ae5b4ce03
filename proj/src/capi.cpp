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

#include "trsys/trsys.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>
#include <variant>
#include <vector>

#include "trsys/characteristic.hpp"
#include "trsys/error.hpp"
#include "trsys/fusion.hpp"
#include "trsys/lattice.hpp"
#include "trsys/matchstick.hpp"
#include "trsys/serialize.hpp"
#include "trsys/transfer.hpp"
#include "trsys/verify.hpp"

struct trs_lattice {
  trsys::Lattice lattice;
};

struct trs_collection {
  std::variant<std::vector<trsys::TransferSystem>, std::vector<trsys::SaturatedCover>,
               std::vector<trsys::InteriorOperator>>
      items;
  trsys::Lattice lattice;
  bool saturated = false;
};

namespace {

thread_local std::string g_last_error;

trs_status fail(trs_status s, std::string message) {
  g_last_error = std::move(message);
  return s;
}

// Runs body, mapping exceptions onto status codes.
template <typename Body>
trs_status guarded(Body&& body) {
  try {
    body();
    return TRS_OK;
  } catch (const trsys::Error& e) {
    return fail(static_cast<trs_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(TRS_SIZE_LIMIT, "out of memory");
  } catch (const std::exception& e) {
    return fail(TRS_INTERNAL, e.what());
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(const void* p, const char* what) {
  if (!p) throw trsys::Error(trsys::ErrorCode::kInvalidArgument, std::string(what) + " is null");
}

trsys::EnumerationOptions to_options(const trs_enum_options* opts) {
  trsys::EnumerationOptions o;
  if (opts) {
    o.jobs = opts->jobs == 0 ? 1 : opts->jobs;
    if (opts->max_pairs != 0) o.max_pairs = opts->max_pairs;
  }
  return o;
}

std::string count_str(const trsys::BigCount& c) { return c.str(); }

}  // namespace

extern "C" {

const char* trs_last_error(void) { return g_last_error.c_str(); }

const char* trs_status_name(trs_status status) {
  if (status == TRS_INTERNAL) return "Internal";
  // Names are string literals, so data() is terminated.
  return trsys::error_code_name(static_cast<trsys::ErrorCode>(status)).data();
}

void trs_string_free(char* s) { std::free(s); }

trs_status trs_lattice_family(const char* family, uint64_t m, uint64_t n, trs_lattice** out) {
  return guarded([&] {
    require(family, "family");
    require(out, "out");
    const std::string f = family;
    auto make = [&]() -> trsys::Lattice {
      if (f == "chain") return trsys::chain(n);
      if (f == "cube") return trsys::boolean_cube(n);
      if (f == "rect") return trsys::rectangle(m, n);
      if (f == "fuse2") return trsys::iterated_fusion(trsys::chain(2), n);
      if (f == "subcpcp") return trsys::sub_cp_cp(n);
      throw trsys::Error(trsys::ErrorCode::kInvalidArgument, "unknown family \"" + f + "\"");
    };
    *out = new trs_lattice{make()};
  });
}

trs_status trs_lattice_from_json(const char* json, trs_lattice** out) {
  return guarded([&] {
    require(json, "json");
    require(out, "out");
    trsys::Json j;
    try {
      j = trsys::Json::parse(json);
    } catch (const nlohmann::json::exception& e) {
      throw trsys::Error(trsys::ErrorCode::kParseError, e.what());
    }
    *out = new trs_lattice{trsys::lattice_from_json(j)};
  });
}

trs_status trs_lattice_fusion(const trs_lattice* p, const trs_lattice* q, trs_lattice** out) {
  return guarded([&] {
    require(p, "p");
    require(q, "q");
    require(out, "out");
    *out = new trs_lattice{trsys::fusion(p->lattice, q->lattice)};
  });
}

void trs_lattice_free(trs_lattice* lattice) { delete lattice; }

size_t trs_lattice_size(const trs_lattice* lattice) { return lattice ? lattice->lattice.size() : 0; }

size_t trs_lattice_strict_pairs(const trs_lattice* lattice) {
  return lattice ? lattice->lattice.poset().strict_pair_count() : 0;
}

int trs_lattice_is_modular(const trs_lattice* lattice) {
  return lattice && trsys::is_modular(lattice->lattice) ? 1 : 0;
}

trs_status trs_lattice_to_json(const trs_lattice* lattice, char** out) {
  return guarded([&] {
    require(lattice, "lattice");
    require(out, "out");
    *out = dup(trsys::lattice_to_json(lattice->lattice).dump());
  });
}

trs_status trs_lattice_to_dot(const trs_lattice* lattice, char** out) {
  return guarded([&] {
    require(lattice, "lattice");
    require(out, "out");
    *out = dup(trsys::lattice_to_dot(lattice->lattice.poset()));
  });
}

trs_status trs_enumerate(const trs_lattice* lattice, trs_kind kind, const trs_enum_options* opts,
                         trs_collection** out) {
  return guarded([&] {
    require(lattice, "lattice");
    require(out, "out");
    const auto o = to_options(opts);
    const trsys::Lattice& lat = lattice->lattice;
    switch (kind) {
      case TRS_KIND_TRANSFER:
        *out = new trs_collection{trsys::enumerate_transfer_systems(lat.poset_ptr(), o), lat, false};
        return;
      case TRS_KIND_SATURATED:
        *out = new trs_collection{trsys::enumerate_saturated_systems(lat.poset_ptr(), o), lat, true};
        return;
      case TRS_KIND_COVERS:
        *out = new trs_collection{trsys::enumerate_covers(lat, o.jobs), lat, false};
        return;
      case TRS_KIND_INTERIOR:
        *out = new trs_collection{trsys::enumerate_interior_operators(lat), lat, false};
        return;
    }
    throw trsys::Error(trsys::ErrorCode::kInvalidArgument, "unknown kind");
  });
}

void trs_collection_free(trs_collection* items) { delete items; }

size_t trs_collection_size(const trs_collection* items) {
  if (!items) return 0;
  return std::visit([](const auto& v) { return v.size(); }, items->items);
}

trs_status trs_collection_validate(const trs_collection* items, size_t i) {
  return guarded([&] {
    require(items, "items");
    if (i >= trs_collection_size(items)) {
      throw trsys::Error(trsys::ErrorCode::kInvalidArgument, "item index out of range");
    }
    const trsys::Lattice& lat = items->lattice;
    bool ok = true;
    if (auto* systems = std::get_if<std::vector<trsys::TransferSystem>>(&items->items)) {
      const auto& r = (*systems)[i];
      ok = !trsys::find_violation(r.poset(), r.relation()) && (!items->saturated || trsys::is_saturated(r));
    } else if (auto* covers = std::get_if<std::vector<trsys::SaturatedCover>>(&items->items)) {
      const auto edges = (*covers)[i].edges();
      ok = std::holds_alternative<trsys::SaturatedCover>(trsys::validate_cover(lat, edges));
    } else {
      const auto& f = std::get<std::vector<trsys::InteriorOperator>>(items->items)[i];
      const trsys::Mask fixed = f.fixed_points();
      ok = f.is_idempotent() && f.is_contractive() && trsys::has(fixed, lat.bottom());
      trsys::for_each_bit(fixed, [&](trsys::Element a) {
        trsys::for_each_bit(fixed, [&](trsys::Element b) { ok = ok && trsys::has(fixed, lat.join(a, b)); });
      });
    }
    if (!ok) trsys::invariant_failure("item " + std::to_string(i) + " failed re-validation");
  });
}

trs_status trs_collection_item_json(const trs_collection* items, size_t i, char** out) {
  return guarded([&] {
    require(items, "items");
    require(out, "out");
    if (i >= trs_collection_size(items)) {
      throw trsys::Error(trsys::ErrorCode::kInvalidArgument, "item index out of range");
    }
    const trsys::Json j = std::visit(
        [&](const auto& v) -> trsys::Json {
          using T = typename std::decay_t<decltype(v)>::value_type;
          if constexpr (std::is_same_v<T, trsys::TransferSystem>) return trsys::system_to_json(v[i]);
          else if constexpr (std::is_same_v<T, trsys::SaturatedCover>) return trsys::cover_to_json(v[i]);
          else return trsys::operator_to_json(v[i]);
        },
        items->items);
    *out = dup(j.dump());
  });
}

trs_status trs_collection_item_dot(const trs_collection* items, size_t i, char** out) {
  return guarded([&] {
    require(items, "items");
    require(out, "out");
    if (i >= trs_collection_size(items)) {
      throw trsys::Error(trsys::ErrorCode::kInvalidArgument, "item index out of range");
    }
    const std::string name = "item" + std::to_string(i);
    if (auto* systems = std::get_if<std::vector<trsys::TransferSystem>>(&items->items)) {
      *out = dup(trsys::system_to_dot((*systems)[i], name));
    } else if (auto* covers = std::get_if<std::vector<trsys::SaturatedCover>>(&items->items)) {
      *out = dup(trsys::cover_to_dot((*covers)[i], name));
    } else {
      throw trsys::Error(trsys::ErrorCode::kInvalidArgument, "interior operators have no DOT form");
    }
  });
}

trs_status trs_tr_hasse_dot(const trs_lattice* lattice, const trs_enum_options* opts, char** out) {
  return guarded([&] {
    require(lattice, "lattice");
    require(out, "out");
    *out = dup(trsys::tr_lattice_to_dot(trsys::enumerate_all(lattice->lattice, to_options(opts))));
  });
}

trs_status trs_fiber_report(const trs_lattice* lattice, const trs_enum_options* opts, char** out) {
  return guarded([&] {
    require(lattice, "lattice");
    require(out, "out");
    trsys::Json arr = trsys::Json::array();
    for (const auto& f : trsys::fiber_decomposition(lattice->lattice, to_options(opts))) {
      arr.push_back(trsys::fiber_to_json(f));
    }
    *out = dup(arr.dump());
  });
}

trs_status trs_fusion_count(const trs_lattice* p, const trs_lattice* q, const trs_enum_options* opts,
                            char** out) {
  return guarded([&] {
    require(p, "p");
    require(q, "q");
    require(out, "out");
    const auto b = trsys::count_tr_fusion(p->lattice, q->lattice, to_options(opts));
    auto terms = [](const std::vector<trsys::MiddleTerm>& ts, const trsys::Lattice& side) {
      trsys::Json arr = trsys::Json::array();
      for (const auto& t : ts) {
        trsys::Json j;
        j["element"] = t.element;
        j["name"] = side.name(t.element);
        j["fibrant_count"] = count_str(t.fibrant_count);
        j["term"] = count_str(t.term);
        arr.push_back(std::move(j));
      }
      return arr;
    };
    trsys::Json j;
    j["top_term"] = count_str(b.top_term);
    j["bottom_term"] = count_str(b.bottom_term);
    j["middle_terms_p"] = terms(b.middle_terms_p, p->lattice);
    j["middle_terms_q"] = terms(b.middle_terms_q, q->lattice);
    j["total"] = count_str(b.total);
    *out = dup(j.dump());
  });
}

trs_status trs_rank_two(uint64_t p, const trs_enum_options* opts, char** out) {
  return guarded([&] {
    require(out, "out");
    const auto o = to_options(opts);
    trsys::Json j;
    j["p"] = p;
    j["closed_form"] = count_str(trsys::tr_rank_two(p));
    const std::uint64_t n = p + 1;
    const std::uint64_t strict = 3 * n + 1;
    if (n + 2 <= trsys::kMaxElements && strict <= o.max_pairs && n < 20) {
      const auto d = trsys::bmt_decompose(n, o);
      trsys::Json c;
      c["bottom"] = d.bottom_cube.size();
      c["middle"] = d.middle.size();
      c["top"] = d.top_cube.size();
      c["total"] = d.tr.size();
      c["agrees"] = trsys::BigCount(d.tr.size()) == trsys::tr_rank_two(p);
      j["census"] = std::move(c);
    } else {
      j["census"] = nullptr;
    }
    *out = dup(j.dump());
  });
}

trs_status trs_verify_checks(char** out) {
  return guarded([&] {
    require(out, "out");
    *out = dup(trsys::Json(trsys::verify_checks()).dump());
  });
}

trs_status trs_verify_run(const char* check, const trs_verify_options* opts, int* passed, char** report) {
  return guarded([&] {
    require(check, "check");
    require(passed, "passed");
    require(report, "report");
    trsys::VerifyOptions o;
    if (opts) {
      if (opts->has_max) o.max = opts->max;
      o.jobs = opts->jobs == 0 ? 1 : opts->jobs;
      o.seed = opts->seed;
    }
    const auto r = trsys::run_check(check, o);
    std::string text;
    for (const auto& line : r.lines) text += line + "\n";
    *passed = r.passed ? 1 : 0;
    *report = dup(text);
  });
}

}  // extern "C"
