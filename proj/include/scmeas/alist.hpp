// Reader/writer for the alist sparse binary matrix interchange format.
//
// Layout (all tokens whitespace separated, indices 1-based):
//   line 1: n m            (columns first, then rows)
//   line 2: max_col_deg max_row_deg
//   line 3: n column degrees
//   line 4: m row degrees
//   next n lines: row indices of the ones in each column
//   next m lines: column indices of the ones in each row
// Writers differ on padding: some pad every adjacency line with zeros up to
// the max degree. We write unpadded and accept both on read (a 0 token is
// treated as padding and skipped).

#ifndef SCMEAS_ALIST_HPP
#define SCMEAS_ALIST_HPP

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "scmeas/binary_matrix.hpp"

namespace scmeas {

class AlistError : public std::runtime_error {
  public:
    AlistError(int line, const std::string& what) : std::runtime_error("alist line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

  private:
    int line_;
};

namespace detail {

struct LineTokens {
    int line_no = 0;
    std::vector<long> values;
};

inline LineTokens next_data_line(std::istream& in, int& line_no) {
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        LineTokens out;
        out.line_no = line_no;
        std::istringstream ss(line);
        std::string tok;
        while (ss >> tok) {
            try {
                std::size_t used = 0;
                long v = std::stol(tok, &used);
                if (used != tok.size()) throw std::invalid_argument(tok);
                out.values.push_back(v);
            } catch (const std::exception&) {
                throw AlistError(line_no, "expected integer, got '" + tok + "'");
            }
        }
        if (!out.values.empty()) return out;  // skip blank lines
    }
    throw AlistError(line_no + 1, "unexpected end of file");
}

}  // namespace detail

inline void write_alist(std::ostream& out, const BinarySparseMatrix& a) {
    const int m = a.rows();
    const int n = a.cols();
    int max_col = 0, max_row = 0;
    for (int c = 0; c < n; ++c) max_col = std::max(max_col, static_cast<int>(a.col(c).size()));
    for (int r = 0; r < m; ++r) max_row = std::max(max_row, static_cast<int>(a.row(r).size()));

    out << n << ' ' << m << '\n';
    out << max_col << ' ' << max_row << '\n';
    for (int c = 0; c < n; ++c) out << a.col(c).size() << (c + 1 < n ? ' ' : '\n');
    for (int r = 0; r < m; ++r) out << a.row(r).size() << (r + 1 < m ? ' ' : '\n');
    for (int c = 0; c < n; ++c) {
        const auto& adj = a.col(c);
        for (std::size_t k = 0; k < adj.size(); ++k) out << adj[k] + 1 << (k + 1 < adj.size() ? ' ' : '\n');
        if (adj.empty()) out << '\n';
    }
    for (int r = 0; r < m; ++r) {
        const auto& adj = a.row(r);
        for (std::size_t k = 0; k < adj.size(); ++k) out << adj[k] + 1 << (k + 1 < adj.size() ? ' ' : '\n');
        if (adj.empty()) out << '\n';
    }
}

inline void write_alist_file(const std::string& path, const BinarySparseMatrix& a) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    write_alist(out, a);
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

inline BinarySparseMatrix read_alist(std::istream& in) {
    int line_no = 0;

    auto header = detail::next_data_line(in, line_no);
    if (header.values.size() != 2) throw AlistError(header.line_no, "expected 'n m' header");
    const long n = header.values[0];
    const long m = header.values[1];
    if (n < 0 || m < 0) throw AlistError(header.line_no, "negative dimension");
    if (n > 100'000'000 || m > 100'000'000) throw AlistError(header.line_no, "dimension implausibly large");

    auto maxdeg = detail::next_data_line(in, line_no);
    if (maxdeg.values.size() != 2) throw AlistError(maxdeg.line_no, "expected 'max_col_deg max_row_deg'");

    auto read_degrees = [&](long count, const char* what) {
        std::vector<long> degs;
        degs.reserve(static_cast<std::size_t>(count));
        while (static_cast<long>(degs.size()) < count) {
            auto t = detail::next_data_line(in, line_no);
            for (long v : t.values) {
                if (static_cast<long>(degs.size()) == count) throw AlistError(t.line_no, std::string("too many ") + what + " degrees");
                if (v < 0) throw AlistError(t.line_no, std::string("negative ") + what + " degree");
                degs.push_back(v);
            }
        }
        return degs;
    };

    const auto col_deg = read_degrees(n, "column");
    const auto row_deg = read_degrees(m, "row");

    BinarySparseMatrix a(static_cast<int>(m), static_cast<int>(n));

    // column adjacency: authoritative for the entry set
    for (long c = 0; c < n; ++c) {
        auto t = detail::next_data_line(in, line_no);
        long seen = 0;
        for (long v : t.values) {
            if (v == 0) continue;  // padding
            if (v < 1 || v > m) throw AlistError(t.line_no, "row index " + std::to_string(v) + " out of range 1.." + std::to_string(m));
            a.add_entry(static_cast<int>(v - 1), static_cast<int>(c));
            ++seen;
        }
        if (seen != col_deg[static_cast<std::size_t>(c)])
            throw AlistError(t.line_no, "column " + std::to_string(c + 1) + " lists " + std::to_string(seen) + " entries, degree line says " + std::to_string(col_deg[static_cast<std::size_t>(c)]));
    }

    try {
        a.finalize();
    } catch (const std::invalid_argument& e) {
        throw AlistError(line_no, e.what());
    }

    // row adjacency: must agree with what the columns described
    for (long r = 0; r < m; ++r) {
        auto t = detail::next_data_line(in, line_no);
        std::vector<int> cols;
        for (long v : t.values) {
            if (v == 0) continue;
            if (v < 1 || v > n) throw AlistError(t.line_no, "column index " + std::to_string(v) + " out of range 1.." + std::to_string(n));
            cols.push_back(static_cast<int>(v - 1));
        }
        std::sort(cols.begin(), cols.end());
        if (static_cast<long>(cols.size()) != row_deg[static_cast<std::size_t>(r)])
            throw AlistError(t.line_no, "row " + std::to_string(r + 1) + " lists " + std::to_string(cols.size()) + " entries, degree line says " + std::to_string(row_deg[static_cast<std::size_t>(r)]));
        if (cols != a.row(static_cast<int>(r)))
            throw AlistError(t.line_no, "row " + std::to_string(r + 1) + " adjacency disagrees with column section");
    }

    return a;
}

inline BinarySparseMatrix read_alist_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
    return read_alist(in);
}

}  // namespace scmeas

#endif
