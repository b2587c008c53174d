#pragma once

// TSV layouts for (matching, partial) tables.
//
// Matrix layout: a header row `m\p  0  1 ... L`, then one row per matching
// count m = first_row..L whose cells run p = 0..L-m (impossible cells are
// left empty). Triples layout: `m  p  value`, one line per possible cell.

#include "dnamatch/matcher.hpp"
#include "dnamatch/multilocus.hpp"

#include <cstddef>
#include <iosfwd>

namespace dnamatch {

void write_matrix_tsv(std::ostream& out, const MatchHistogram& table, std::size_t first_row = 0);
void write_matrix_tsv(std::ostream& out, const MatchTable<double>& table, std::size_t first_row = 0,
                      int digits = 6);
void write_triples_tsv(std::ostream& out, const MatchTable<double>& table, std::size_t first_row = 0,
                       int digits = 6);

/// Reads a full matrix-layout histogram (rows 0..L). '#' lines are skipped.
MatchHistogram read_histogram_tsv(std::istream& in);

} // namespace dnamatch
