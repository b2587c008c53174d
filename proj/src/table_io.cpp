#include "dnamatch/table_io.hpp"

#include "dnamatch/error.hpp"
#include "dnamatch/text_util.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace dnamatch {

namespace {

void write_header(std::ostream& out, std::size_t loci)
{
    out << "m\\p";
    for (std::size_t p = 0; p <= loci; ++p)
        out << '\t' << p;
    out << '\n';
}

template <typename Cell>
void write_matrix(std::ostream& out, std::size_t loci, std::size_t first_row, Cell&& cell)
{
    write_header(out, loci);
    for (std::size_t m = first_row; m <= loci; ++m) {
        out << m;
        for (std::size_t p = 0; p <= loci; ++p) {
            out << '\t';
            if (m + p <= loci)
                out << cell(m, p);
        }
        out << '\n';
    }
}

} // namespace

void write_matrix_tsv(std::ostream& out, const MatchHistogram& table, std::size_t first_row)
{
    write_matrix(out, table.loci(), first_row,
                 [&](std::size_t m, std::size_t p) { return table.at(m, p); });
}

void write_matrix_tsv(std::ostream& out, const MatchTable<double>& table, std::size_t first_row,
                      int digits)
{
    write_matrix(out, table.loci(), first_row, [&](std::size_t m, std::size_t p) {
        return format_double(table.at(m, p), digits);
    });
}

void write_triples_tsv(std::ostream& out, const MatchTable<double>& table, std::size_t first_row,
                       int digits)
{
    out << "m\tp\tvalue\n";
    for (std::size_t m = first_row; m <= table.loci(); ++m)
        for (std::size_t p = 0; m + p <= table.loci(); ++p)
            out << m << '\t' << p << '\t' << format_double(table.at(m, p), digits) << '\n';
}

MatchHistogram read_histogram_tsv(std::istream& in)
{
    std::string line;
    std::size_t lineno = 0;
    std::size_t loci = 0;
    bool header_seen = false;
    std::size_t next_row = 0;
    MatchHistogram hist;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty() || trim(line).front() == '#')
            continue;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        auto fields = split(line, '\t');
        auto where = [&] { return "histogram TSV line " + std::to_string(lineno) + ": "; };
        if (!header_seen) {
            if (fields.size() < 2 || fields[0] != "m\\p")
                throw InputError(where() + "expected matrix header 'm\\p'");
            loci = fields.size() - 2;
            if (loci == 0 || loci > kMaxLoci)
                throw InputError(where() + "unsupported number of loci");
            for (std::size_t p = 0; p <= loci; ++p) {
                std::uint64_t v = 0;
                if (!parse_uint(fields[p + 1], v) || v != p)
                    throw InputError(where() + "column headers must be 0..L");
            }
            hist = MatchHistogram(loci);
            header_seen = true;
            continue;
        }
        if (fields.size() != loci + 2)
            throw InputError(where() + "wrong number of fields");
        std::uint64_t m = 0;
        if (!parse_uint(fields[0], m) || m != next_row)
            throw InputError(where() + "rows must be 0..L in order");
        for (std::size_t p = 0; p <= loci; ++p) {
            const auto cell = fields[p + 1];
            if (m + p > loci) {
                if (!cell.empty())
                    throw InputError(where() + "value in impossible cell");
                continue;
            }
            std::uint64_t v = 0;
            if (!parse_uint(cell, v))
                throw InputError(where() + "malformed count '" + std::string(cell) + "'");
            hist.at(m, p) = v;
        }
        ++next_row;
    }
    if (!header_seen || next_row != loci + 1)
        throw InputError("histogram TSV: incomplete matrix");
    return hist;
}

} // namespace dnamatch
