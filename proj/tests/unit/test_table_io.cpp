#include "dnamatch/error.hpp"
#include "dnamatch/table_io.hpp"

#include <doctest.h>

#include <sstream>

using namespace dnamatch;

TEST_CASE("histogram matrix round trip")
{
    MatchHistogram h(3);
    std::uint64_t v = 1;
    for (std::size_t m = 0; m <= 3; ++m)
        for (std::size_t p = 0; m + p <= 3; ++p)
            h.at(m, p) = v++ * 1000003;
    std::stringstream s;
    s << "# comment\n";
    write_matrix_tsv(s, h);
    CHECK(s.str().find("m\\p\t0\t1\t2\t3\n") != std::string::npos);
    CHECK(s.str().find("3\t") != std::string::npos);
    CHECK(read_histogram_tsv(s) == h);
}

TEST_CASE("expected table layouts")
{
    MatchTable<double> t(2);
    t.at(0, 0) = 0.5;
    t.at(1, 1) = 1.0 / 3.0;
    t.at(2, 0) = 1e-20;
    std::ostringstream m, tr;
    write_matrix_tsv(m, t, 1);
    CHECK(m.str() == "m\\p\t0\t1\t2\n1\t0\t0.333333\t\n2\t1e-20\t\t\n");
    write_triples_tsv(tr, t, 2);
    CHECK(tr.str() == "m\tp\tvalue\n2\t0\t1e-20\n");
}

TEST_CASE("malformed histograms")
{
    auto read = [](const std::string& text) {
        std::istringstream s(text);
        return read_histogram_tsv(s);
    };
    CHECK_THROWS_AS(read(""), InputError);
    CHECK_THROWS_AS(read("m\\p\t0\t1\n0\t1\t2\n"), InputError);
    CHECK_THROWS_AS(read("m\\p\t0\t1\n0\t1\t2\n1\t3\t4\n"), InputError);
    CHECK_THROWS_AS(read("m\\p\t0\t1\n0\t1\t2\n1\tx\t\n"), InputError);
    CHECK_THROWS_AS(read("m\\p\t0\t2\n0\t1\t2\n1\t1\t\n"), InputError);
    CHECK_THROWS_AS(read("x\t0\t1\n"), InputError);
    CHECK(read("m\\p\t0\t1\n0\t1\t2\n1\t3\t\n").at(1, 0) == 3);
}
