#include <gtest/gtest.h>

#include <random>

#include "crossbar/matrix_io.hpp"

using namespace crossbar;

TEST(MatrixIo, WritesHeaderAndRows) {
    const auto text = format_matrix(DenseMatrix::from_rows({{1, -0.5}, {0, 2}}));
    EXPECT_EQ(text, "2 2\n1 -0.5\n0 2\n");
}

TEST(MatrixIo, RoundTripIsValueExact) {
    std::mt19937_64 gen(17);
    std::uniform_real_distribution<double> u(-1e3, 1e3);
    for (int trial = 0; trial < 20; ++trial) {
        RowMajorMatrix a(1 + trial % 5, 1 + trial % 7);
        for (Index i = 0; i < a.size(); ++i) a.data()[i] = u(gen) * std::pow(10.0, trial % 9 - 4);
        const DenseMatrix A(a);
        EXPECT_EQ(parse_matrix(format_matrix(A)), A);
    }
}

TEST(MatrixIo, WrongColumnCountNamesLine) {
    try {
        parse_matrix("2 3\n1 2 3\n4 5\n");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3u);
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
    }
}

TEST(MatrixIo, RejectsMalformedInput) {
    EXPECT_THROW(parse_matrix(""), ParseError);
    EXPECT_THROW(parse_matrix("2\n1 2\n"), ParseError);
    EXPECT_THROW(parse_matrix("0 2\n"), ParseError);
    EXPECT_THROW(parse_matrix("1 2\n1 x\n"), ParseError);
    EXPECT_THROW(parse_matrix("1 1\ninf\n"), ParseError);
    EXPECT_THROW(parse_matrix("2 1\n1\n"), ParseError);
    EXPECT_THROW(parse_matrix("1 1\n1\n2\n"), ParseError);
    EXPECT_NO_THROW(parse_matrix("1 1\n1\n\n"));
}
