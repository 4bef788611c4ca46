#pragma once

// JSON documents. Every document carries "schema": 1; coefficients are
// written reduced so files diff cleanly.
//
//   pre-Lie table  {"schema":1,"operation":"prelie","p":7,"exponents":[3,1],
//                   "table":[[[49,0],[0,0]],[[0,0],[0,0]]]}
//                  table[i][j] holds the coefficients of x_i . x_j.
//   brace          {"schema":1,"operation":"circle","p":7,"exponents":[3,1],
//                   "table":[[a o x_1, ..., a o x_r] for a in index order],
//                   "provenance":{...}}  (provenance optional)
//   family spec    {"schema":1,"family":5,"p":7,"params":{"a":49}}
//                  plus "form":"summary" for family 7's summary letters.
//   enum space     {"schema":1,"p":3,"exponents":[3,1],"entries":[
//                   {"i":0,"j":0,"k":0,"start":0,"stride":9,"count":3}, ...]}

#include <string>
#include <variant>

#include "nilp/brace.hpp"
#include "nilp/families.hpp"
#include "nilp/prelie.hpp"
#include "nilp/report.hpp"
#include "nilp/search.hpp"

namespace nilp {

Json prelie_to_json(const PreLieRing& ring);
PreLieRing prelie_from_json(const Json& j);

/// Uses the brace's circle table, so the brace is evaluated on every
/// element.
Json brace_to_json(const Brace& b, int threads = 0);
Brace brace_from_json(const Json& j);

Json spec_to_json(const FamilySpec& spec);
FamilySpec spec_from_json(const Json& j);

Json enum_space_to_json(const EnumSpace& space);
EnumSpace enum_space_from_json(const Json& j);

/// "prelie", "circle", "spec" or "enum-space"; FormatError otherwise.
std::string document_kind(const Json& j);

/// FormatError when the file cannot be read or parsed.
Json read_json_file(const std::string& path);
/// Two-space indented with a trailing newline; FormatError on I/O failure.
void write_json_file(const std::string& path, const Json& j);
/// The exact text write_json_file produces.
std::string dump_document(const Json& j);

}  // namespace nilp
