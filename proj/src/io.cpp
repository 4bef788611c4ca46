#include "nilp/io.hpp"

#include <fstream>
#include <sstream>

#include "nilp/errors.hpp"

namespace nilp {
namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) throw FormatError("expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) throw FormatError(std::string("missing field \"") + key + "\"");
  return *it;
}

Int integer(const Json& j, const std::string& what) {
  if (!j.is_number_integer()) throw FormatError(what + " must be an integer");
  return j.get<Int>();
}

void check_schema(const Json& j) {
  if (!j.is_object()) throw FormatError("expected a JSON object");
  auto it = j.find("schema");
  if (it != j.end() && (!it->is_number_integer() || it->get<Int>() != 1)) {
    throw FormatError("unsupported schema version " + it->dump());
  }
}

Shape shape_from(const Json& j) {
  const Int p = integer(field(j, "p"), "p");
  const Json& ex = field(j, "exponents");
  if (!ex.is_array()) throw FormatError("exponents must be an array");
  std::vector<int> exponents;
  for (const auto& e : ex) exponents.push_back(static_cast<int>(integer(e, "exponent")));
  try {
    return Shape(p, exponents);
  } catch (const ShapeError& e) {
    throw FormatError(e.what());
  }
}

Elem elem_from(const Json& j, const Shape& s) {
  if (!j.is_array() || static_cast<int>(j.size()) != s.rank()) {
    throw FormatError("element must be an array of " + std::to_string(s.rank()) + " integers");
  }
  Elem u(s.rank());
  for (int k = 0; k < s.rank(); ++k) u[k] = integer(j[static_cast<std::size_t>(k)], "coefficient");
  return s.reduce(u);
}

void header(Json& j, const char* operation, const Shape& s) {
  j["schema"] = 1;
  j["operation"] = operation;
  j["p"] = s.p();
  j["exponents"] = s.exponents();
}

template <class F>
auto guarded(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw FormatError(e.what());
  }
}

}  // namespace

Json prelie_to_json(const PreLieRing& ring) {
  const Shape& s = ring.shape();
  Json j;
  header(j, "prelie", s);
  Json table = Json::array();
  for (int i = 0; i < s.rank(); ++i) {
    Json row = Json::array();
    for (int jj = 0; jj < s.rank(); ++jj) row.push_back(to_json(ring.table().entry(i, jj)));
    table.push_back(row);
  }
  j["table"] = table;
  return j;
}

PreLieRing prelie_from_json(const Json& j) {
  return guarded([&] {
    check_schema(j);
    if (document_kind(j) != "prelie") throw FormatError("not a pre-Lie table document");
    const Shape s = shape_from(j);
    const Json& table = field(j, "table");
    if (!table.is_array() || static_cast<int>(table.size()) != s.rank()) {
      throw FormatError("table must have " + std::to_string(s.rank()) + " rows");
    }
    SCTable t(s.rank());
    for (int i = 0; i < s.rank(); ++i) {
      const Json& row = table[static_cast<std::size_t>(i)];
      if (!row.is_array() || static_cast<int>(row.size()) != s.rank()) {
        throw FormatError("table row " + std::to_string(i) + " must have " + std::to_string(s.rank()) + " entries");
      }
      for (int k = 0; k < s.rank(); ++k) t.set(i, k, elem_from(row[static_cast<std::size_t>(k)], s));
    }
    return PreLieRing(s, std::move(t));
  });
}

Json brace_to_json(const Brace& b, int threads) {
  const Shape& s = b.shape();
  Json j;
  header(j, "circle", s);
  const auto rows = b.circle_table(threads);
  const auto r = static_cast<std::size_t>(s.rank());
  Json table = Json::array();
  for (std::size_t idx = 0; idx < rows.size(); idx += r) {
    Json row = Json::array();
    for (std::size_t k = 0; k < r; ++k) row.push_back(to_json(rows[idx + k]));
    table.push_back(row);
  }
  j["table"] = table;
  if (const auto& prov = b.provenance()) {
    j["provenance"] = {{"construction", "flows"},
                       {"nilpotency_index", prov->nilpotency_index},
                       {"xi", prov->xi},
                       {"prelie", prelie_to_json(prov->ring)}};
  }
  return j;
}

Brace brace_from_json(const Json& j) {
  return guarded([&] {
    check_schema(j);
    if (document_kind(j) != "circle") throw FormatError("not a brace (circle) document");
    const Shape s = shape_from(j);
    const Json& table = field(j, "table");
    if (!table.is_array() || table.size() != s.order()) {
      throw FormatError("brace table must have " + std::to_string(s.order()) + " rows");
    }
    std::vector<Elem> rows;
    rows.reserve(s.order() * static_cast<std::uint64_t>(s.rank()));
    for (const auto& row : table) {
      if (!row.is_array() || static_cast<int>(row.size()) != s.rank()) {
        throw FormatError("brace row must have " + std::to_string(s.rank()) + " entries");
      }
      for (const auto& e : row) rows.push_back(elem_from(e, s));
    }
    std::optional<BraceProvenance> prov;
    if (auto it = j.find("provenance"); it != j.end()) {
      PreLieRing ring = prelie_from_json(field(*it, "prelie"));
      if (!(ring.shape() == s)) throw FormatError("provenance ring has a different shape");
      prov = BraceProvenance{std::move(ring), static_cast<int>(integer(field(*it, "nilpotency_index"), "index")),
                             integer(field(*it, "xi"), "xi")};
    }
    return Brace::from_circle_table(s, rows, std::move(prov));
  });
}

Json spec_to_json(const FamilySpec& spec) {
  Json j;
  j["schema"] = 1;
  j["family"] = spec.family;
  j["p"] = spec.p;
  Json params = Json::object();
  for (const auto& [k, v] : spec.params) params[k] = v;
  j["params"] = params;
  if (spec.form == Item7Form::summary) j["form"] = "summary";
  return j;
}

FamilySpec spec_from_json(const Json& j) {
  return guarded([&] {
    check_schema(j);
    FamilySpec spec;
    spec.family = static_cast<int>(integer(field(j, "family"), "family"));
    spec.p = integer(field(j, "p"), "p");
    if (auto it = j.find("params"); it != j.end()) {
      if (!it->is_object()) throw FormatError("params must be an object");
      for (const auto& [k, v] : it->items()) spec.params[k] = integer(v, "parameter " + k);
    }
    if (auto it = j.find("form"); it != j.end()) {
      const std::string form = it->get<std::string>();
      if (form == "summary") {
        spec.form = Item7Form::summary;
      } else if (form != "canonical") {
        throw FormatError("form must be \"canonical\" or \"summary\"");
      }
    }
    return spec;
  });
}

Json enum_space_to_json(const EnumSpace& space) {
  Json j;
  j["schema"] = 1;
  j["p"] = space.shape.p();
  j["exponents"] = space.shape.exponents();
  Json entries = Json::array();
  for (const auto& e : space.entries) {
    entries.push_back(
        {{"i", e.i}, {"j", e.j}, {"k", e.k}, {"start", e.start}, {"stride", e.stride}, {"count", e.count}});
  }
  j["entries"] = entries;
  return j;
}

EnumSpace enum_space_from_json(const Json& j) {
  return guarded([&] {
    check_schema(j);
    EnumSpace space{shape_from(j), {}};
    const Json& entries = field(j, "entries");
    if (!entries.is_array()) throw FormatError("entries must be an array");
    for (const auto& e : entries) {
      EnumEntry entry;
      entry.i = static_cast<int>(integer(field(e, "i"), "i"));
      entry.j = static_cast<int>(integer(field(e, "j"), "j"));
      entry.k = static_cast<int>(integer(field(e, "k"), "k"));
      entry.start = e.contains("start") ? integer(e["start"], "start") : 0;
      entry.stride = e.contains("stride") ? integer(e["stride"], "stride") : 1;
      entry.count = integer(field(e, "count"), "count");
      space.entries.push_back(entry);
    }
    return space;
  });
}

std::string document_kind(const Json& j) {
  if (!j.is_object()) throw FormatError("expected a JSON object");
  if (auto it = j.find("operation"); it != j.end()) {
    if (*it == "prelie") return "prelie";
    if (*it == "circle") return "circle";
    throw FormatError("unknown operation " + it->dump());
  }
  if (j.contains("family")) return "spec";
  if (j.contains("entries")) return "enum-space";
  throw FormatError("unrecognised document (no \"operation\", \"family\" or \"entries\" field)");
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw FormatError(path + ": " + e.what());
  }
}

std::string dump_document(const Json& j) { return j.dump(2) + "\n"; }

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path);
  out << dump_document(j);
  if (!out) throw FormatError("write failed for " + path);
}

}  // namespace nilp
