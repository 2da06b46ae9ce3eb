#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <sstream>
#include <vector>

#include "scmeas/alist.hpp"
#include "scmeas/binary_matrix.hpp"
#include "scmeas/tanner.hpp"

using namespace scmeas;

namespace {

std::vector<std::vector<int>> to_dense(const BinarySparseMatrix& a) {
    std::vector<std::vector<int>> d(static_cast<std::size_t>(a.rows()), std::vector<int>(static_cast<std::size_t>(a.cols()), 0));
    for (int r = 0; r < a.rows(); ++r)
        for (int c : a.row(r)) d[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = 1;
    return d;
}

}  // namespace

TEST_CASE("circulant permutation blocks") {
    SECTION("shift 0 is the identity") {
        auto eye = circulant(5, 0);
        for (int i = 0; i < 5; ++i) {
            REQUIRE(eye.row(i) == std::vector<int>{i});
        }
    }
    SECTION("shift 1 moves each row's one a column to the right, wrapping") {
        auto s = circulant(5, 1);
        REQUIRE(s.has_entry(0, 1));
        REQUIRE(s.has_entry(3, 4));
        REQUIRE(s.has_entry(4, 0));
        REQUIRE(s.nnz() == 5);
    }
    SECTION("shift reduces mod p, including negatives") {
        REQUIRE(circulant(7, 9) == circulant(7, 2));
        REQUIRE(circulant(7, -1) == circulant(7, 6));
    }
    SECTION("every row and column has weight one") {
        auto s = circulant(11, 4);
        for (int i = 0; i < 11; ++i) {
            REQUIRE(s.row(i).size() == 1);
            REQUIRE(s.col(i).size() == 1);
        }
    }
}

TEST_CASE("parameter validation") {
    REQUIRE_NOTHROW(validate(AbParams{2, 2}));
    REQUIRE_NOTHROW(validate(AbParams{3, 3}));
    REQUIRE_NOTHROW(validate(AbParams{3, 7}));
    REQUIRE_THROWS_AS(validate(AbParams{1, 7}), std::invalid_argument);
    REQUIRE_THROWS_AS(validate(AbParams{3, 2}), std::invalid_argument);   // p < gamma
    REQUIRE_THROWS_AS(validate(AbParams{3, 9}), std::invalid_argument);   // composite
    REQUIRE_THROWS_AS(validate(AbParams{3, 15}), std::invalid_argument);  // composite
    REQUIRE_THROWS_AS(validate(AbParams{4, 4}), std::invalid_argument);   // p=gamma but composite
}

TEST_CASE("AB base matrix H(3,7)") {
    auto h = build_ab_base(AbParams{3, 7});
    REQUIRE(h.rows() == 21);
    REQUIRE(h.cols() == 49);
    REQUIRE(h.nnz() == 147);
    REQUIRE(h.transpose_consistent());

    SECTION("regular degrees: rows weight p, columns weight gamma") {
        for (int r = 0; r < h.rows(); ++r) REQUIRE(h.row(r).size() == 7);
        for (int c = 0; c < h.cols(); ++c) REQUIRE(h.col(c).size() == 3);
    }

    SECTION("block (i,j) is the circulant with shift i*j mod p") {
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 7; ++j) {
                const int shift = (i * j) % 7;
                for (int r = 0; r < 7; ++r) {
                    REQUIRE(h.has_entry(i * 7 + r, j * 7 + (r + shift) % 7));
                }
            }
        }
    }

    SECTION("top block row and leftmost block column are identities") {
        // shift i*j = 0 whenever i = 0 or j = 0
        for (int r = 0; r < 7; ++r)
            for (int j = 0; j < 7; ++j) REQUIRE(h.has_entry(r, j * 7 + r));
        for (int i = 0; i < 3; ++i)
            for (int r = 0; r < 7; ++r) REQUIRE(h.has_entry(i * 7 + r, r));
    }

    SECTION("no 4-cycles: any two rows share at most one column") {
        for (int r1 = 0; r1 < h.rows(); ++r1) {
            for (int r2 = r1 + 1; r2 < h.rows(); ++r2) {
                const auto& a = h.row(r1);
                const auto& b = h.row(r2);
                std::vector<int> inter;
                std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(inter));
                REQUIRE(inter.size() <= 1);
            }
        }
    }
}

TEST_CASE("AB base matrix H(2,5)") {
    auto h = build_ab_base(AbParams{2, 5});
    REQUIRE(h.rows() == 10);
    REQUIRE(h.cols() == 25);
    REQUIRE(h.nnz() == 50);
    // block (1,3): shift 3
    for (int r = 0; r < 5; ++r) REQUIRE(h.has_entry(5 + r, 15 + (r + 3) % 5));
}

TEST_CASE("matvec matches a dense oracle") {
    auto h = build_ab_base(AbParams{3, 5});
    auto dense = to_dense(h);
    std::vector<std::int64_t> x(static_cast<std::size_t>(h.cols()));
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = static_cast<std::int64_t>((7 * i + 3) % 11) - 5;
    auto y = matvec(h, x);
    for (int r = 0; r < h.rows(); ++r) {
        std::int64_t want = 0;
        for (int c = 0; c < h.cols(); ++c) want += dense[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] * x[static_cast<std::size_t>(c)];
        REQUIRE(y[static_cast<std::size_t>(r)] == want);
    }
    REQUIRE_THROWS_AS(matvec(h, std::vector<std::int64_t>(3)), std::invalid_argument);
}

TEST_CASE("entry staging rejects bad input") {
    BinarySparseMatrix a(3, 3);
    REQUIRE_THROWS_AS(a.add_entry(3, 0), std::invalid_argument);
    REQUIRE_THROWS_AS(a.add_entry(0, -1), std::invalid_argument);
    a.add_entry(1, 2);
    a.add_entry(1, 2);
    REQUIRE_THROWS_AS(a.finalize(), std::invalid_argument);
}

TEST_CASE("tanner graph layout") {
    auto h = build_ab_base(AbParams{3, 7});
    auto g = to_tanner(h);
    REQUIRE(g.num_checks == 21);
    REQUIRE(g.num_vars == 49);
    REQUIRE(g.num_edges() == 147);

    SECTION("edge ids are dense row-major nonzero positions") {
        int e = 0;
        for (int c = 0; c < h.rows(); ++c) {
            for (int v : h.row(c)) {
                REQUIRE(g.edge_check[static_cast<std::size_t>(e)] == c);
                REQUIRE(g.edge_var[static_cast<std::size_t>(e)] == v);
                ++e;
            }
        }
    }

    SECTION("both endpoint views agree with edge table") {
        for (int c = 0; c < g.num_checks; ++c) {
            REQUIRE(g.check_degree(c) == 7);
            for (int s = g.check_offset[static_cast<std::size_t>(c)]; s < g.check_offset[static_cast<std::size_t>(c) + 1]; ++s) {
                const int e = g.check_edge[static_cast<std::size_t>(s)];
                REQUIRE(g.edge_check[static_cast<std::size_t>(e)] == c);
                REQUIRE(g.edge_var[static_cast<std::size_t>(e)] == g.check_var[static_cast<std::size_t>(s)]);
            }
        }
        for (int v = 0; v < g.num_vars; ++v) {
            REQUIRE(g.var_degree(v) == 3);
            for (int s = g.var_offset[static_cast<std::size_t>(v)]; s < g.var_offset[static_cast<std::size_t>(v) + 1]; ++s) {
                const int e = g.var_edge[static_cast<std::size_t>(s)];
                REQUIRE(g.edge_var[static_cast<std::size_t>(e)] == v);
                REQUIRE(g.edge_check[static_cast<std::size_t>(e)] == g.var_check[static_cast<std::size_t>(s)]);
            }
        }
    }
}

TEST_CASE("alist round trip") {
    auto h = build_ab_base(AbParams{3, 7});
    std::ostringstream out;
    write_alist(out, h);
    std::istringstream in(out.str());
    auto back = read_alist(in);
    REQUIRE(back == h);
}

TEST_CASE("alist reads the padded dialect") {
    // 3x4 matrix (m=3 rows, n=4 cols), padded with zeros to the max degree
    const char* text =
        "4 3\n"
        "2 3\n"
        "1 2 1 2\n"
        "3 2 1\n"
        "1 0\n"
        "1 2\n"
        "2 0\n"
        "1 3\n"
        "1 2 4\n"
        "2 3 0\n"
        "4 0 0\n";
    std::istringstream in(text);
    auto a = read_alist(in);
    REQUIRE(a.rows() == 3);
    REQUIRE(a.cols() == 4);
    REQUIRE(a.nnz() == 6);
    REQUIRE(a.has_entry(0, 0));
    REQUIRE(a.has_entry(0, 1));
    REQUIRE(a.has_entry(0, 3));
    REQUIRE(a.has_entry(1, 1));
    REQUIRE(a.has_entry(1, 2));
    REQUIRE(a.has_entry(2, 3));
}

TEST_CASE("alist errors carry line numbers") {
    SECTION("bad token") {
        std::istringstream in("4 x\n");
        try {
            read_alist(in);
            FAIL("expected AlistError");
        } catch (const AlistError& e) {
            REQUIRE(e.line() == 1);
        }
    }
    SECTION("out-of-range index") {
        const char* text =
            "2 2\n"
            "1 1\n"
            "1 1\n"
            "1 1\n"
            "3\n"  // row index 3 in a 2-row matrix
            "1\n"
            "1\n"
            "2\n";
        std::istringstream in(text);
        try {
            read_alist(in);
            FAIL("expected AlistError");
        } catch (const AlistError& e) {
            REQUIRE(e.line() == 5);
        }
    }
    SECTION("degree mismatch") {
        const char* text =
            "2 2\n"
            "1 1\n"
            "2 1\n"  // column 1 claims degree 2
            "1 1\n"
            "1\n"
            "2\n"
            "1\n"
            "2\n";
        std::istringstream in(text);
        try {
            read_alist(in);
            FAIL("expected AlistError");
        } catch (const AlistError& e) {
            REQUIRE(e.line() == 5);
        }
    }
    SECTION("row section disagrees with column section") {
        const char* text =
            "2 2\n"
            "1 1\n"
            "1 1\n"
            "1 1\n"
            "1\n"
            "2\n"
            "2\n"  // row 1 should contain column 1
            "1\n";
        std::istringstream in(text);
        try {
            read_alist(in);
            FAIL("expected AlistError");
        } catch (const AlistError& e) {
            REQUIRE(e.line() == 7);
        }
    }
    SECTION("truncated file") {
        std::istringstream in("4 3\n2 3\n");
        REQUIRE_THROWS_AS(read_alist(in), AlistError);
    }
}
