#pragma once

// JSON forms of measures, algebra elements and DFS tables.
//
//   measure:  {"kind": "bernoulli", "lambda": 0.3 | [0.3, 0.2, ...]}
//             {"kind": "ising", "J": 1.0}
//   element:  {"terms": [{"flips": [1, 3], "depth": 3, "values": [[re, im], ...]}, ...]}
//   DFS table: {"n": 2, "depth": 4, "entries": [{"flips": [...], "depth": 4, "values": [...]}, ...]}
//
// Doubles are written in shortest round-trip form, so parse(dump(x)) == x
// bit for bit. Malformed input raises InvalidSpec.

#include "qchain/algebra.hpp"
#include "qchain/dfs.hpp"
#include "qchain/measures.hpp"
#include "qchain/report.hpp"

namespace qchain {

Json measure_to_json(const MeasureSpec& spec);
MeasureSpec measure_from_json(const Json& j);

Json element_to_json(const AlgebraElement& F);
AlgebraElement element_from_json(const Json& j);

Json dfs_table_to_json(const DfsTable& S);
DfsTable dfs_table_from_json(const Json& j);

}  // namespace qchain
