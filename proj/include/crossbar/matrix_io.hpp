#pragma once

// Matrix text format:
//
//     m n
//     a11 a12 ... a1n
//     ...
//     am1 am2 ... amn
//
// Reals are written with 17 significant digits so that a write/read cycle is
// value-exact for doubles. Blank lines after the last row are ignored.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "crossbar/dense.hpp"

namespace crossbar {

inline std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void write_matrix(std::ostream& os, const DenseMatrix& A) {
    os << A.rows() << ' ' << A.cols() << '\n';
    for (Index i = 0; i < A.rows(); ++i) {
        for (Index j = 0; j < A.cols(); ++j) {
            if (j) os << ' ';
            os << format_real(A(i, j));
        }
        os << '\n';
    }
}

inline std::string format_matrix(const DenseMatrix& A) {
    std::ostringstream os;
    write_matrix(os, A);
    return os.str();
}

namespace detail {

inline std::vector<std::string> split_ws(const std::string& line) {
    std::istringstream is(line);
    std::vector<std::string> out;
    for (std::string tok; is >> tok;) out.push_back(tok);
    return out;
}

inline bool is_blank(const std::string& line) {
    return line.find_first_not_of(" \t\r") == std::string::npos;
}

inline double parse_real(const std::string& tok, std::size_t line_no) {
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str() || *end != '\0')
        throw ParseError(line_no, "invalid real '" + tok + "'");
    if (!std::isfinite(v))
        throw ParseError(line_no, "non-finite value '" + tok + "'");
    return v;
}

inline Index parse_dim(const std::string& tok, std::size_t line_no) {
    std::size_t pos = 0;
    long long v = 0;
    try {
        v = std::stoll(tok, &pos, 10);
    } catch (const std::exception&) {
        throw ParseError(line_no, "invalid dimension '" + tok + "'");
    }
    if (pos != tok.size() || v < 1)
        throw ParseError(line_no, "dimension must be a positive integer, got '" + tok + "'");
    return static_cast<Index>(v);
}

}  // namespace detail

inline DenseMatrix read_matrix(std::istream& is) {
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(is, line)) throw ParseError(1, "missing header line 'm n'");
    ++line_no;
    const auto header = detail::split_ws(line);
    if (header.size() != 2)
        throw ParseError(line_no, "header must hold exactly two integers 'm n'");
    const Index m = detail::parse_dim(header[0], line_no);
    const Index n = detail::parse_dim(header[1], line_no);

    RowMajorMatrix values(m, n);
    for (Index i = 0; i < m; ++i) {
        if (!std::getline(is, line))
            throw ParseError(line_no + 1, "expected " + std::to_string(m) + " rows, found " +
                                              std::to_string(i));
        ++line_no;
        const auto toks = detail::split_ws(line);
        if (static_cast<Index>(toks.size()) != n)
            throw ParseError(line_no, "expected " + std::to_string(n) + " columns, found " +
                                          std::to_string(toks.size()));
        for (Index j = 0; j < n; ++j)
            values(i, j) = detail::parse_real(toks[static_cast<std::size_t>(j)], line_no);
    }
    while (std::getline(is, line)) {
        ++line_no;
        if (!detail::is_blank(line)) throw ParseError(line_no, "unexpected data after last row");
    }
    return DenseMatrix(std::move(values));
}

inline DenseMatrix parse_matrix(const std::string& text) {
    std::istringstream is(text);
    return read_matrix(is);
}

}  // namespace crossbar
