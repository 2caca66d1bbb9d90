#pragma once

#include <string>
#include <string_view>

#include "kg/graph.hpp"

namespace kg {

// Tab-separated graph formats. Lines starting with `#` and blank lines are
// skipped; duplicate rows collapse; malformed lines raise Error naming the
// line number and the reason. Fields must be non-empty except where noted.
//
//   triples:  s<TAB>p<TAB>o        plus optional isolated-node lines `node<TAB>x`
//   dataset:  g<TAB>s<TAB>p<TAB>o  empty g = default graph
//   pg:       N<TAB>id[<TAB>label] | NP<TAB>id<TAB>prop<TAB>value
//             E<TAB>id<TAB>src<TAB>dst[<TAB>label] | EP<TAB>id<TAB>prop<TAB>value

Graph parse_triples_tsv(std::string_view text);
GraphDataset parse_dataset_tsv(std::string_view text);
PropertyGraph parse_pg_tsv(std::string_view text);

// Byte-stable serialization: rows sorted lexicographically.
std::string to_triples_tsv(const Graph& g);
std::string to_dataset_tsv(const GraphDataset& ds);
std::string to_pg_tsv(const PropertyGraph& pg);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace kg
