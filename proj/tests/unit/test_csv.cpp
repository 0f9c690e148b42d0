#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <limits>
#include <sstream>

#include "inspect/csv.hpp"
#include "inspect/rng.hpp"

using namespace inspect;

TEST_CASE("reading rows as coordinates") {
    std::istringstream in("1,2,3\n\n4.5,-6e-1,7\n");
    const Matrix m = read_matrix_csv(in);
    REQUIRE(m.rows() == 2);
    REQUIRE(m.cols() == 3);
    CHECK(m(1, 1) == -0.6);
    CHECK(m(1, 0) == 4.5);
}

TEST_CASE("header, delimiter and transpose options") {
    std::istringstream in("a;b\n1;2\n3;4\n5;6\n");
    const Matrix m = read_matrix_csv(in, CsvOptions{';', true, true});
    REQUIRE(m.rows() == 2);
    REQUIRE(m.cols() == 3);
    CHECK(m(0, 2) == 5.0);
    CHECK(m(1, 0) == 2.0);
}

TEST_CASE("malformed input") {
    std::istringstream ragged("1,2,3\n4,5\n");
    try {
        read_matrix_csv(ragged);
        FAIL("expected an error");
    } catch (const IoError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
    std::istringstream bad("1,2\n3,x\n");
    try {
        read_matrix_csv(bad);
        FAIL("expected an error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() == 2);
    }
    std::istringstream nan("1,nan\n");
    CHECK_THROWS_AS(read_matrix_csv(nan), ParseError);
    std::istringstream empty("\n\n");
    CHECK_THROWS_AS(read_matrix_csv(empty), IoError);
    CHECK_THROWS_AS(read_matrix_csv(std::string("/nonexistent/dir/x.csv")), IoError);
}

TEST_CASE("writing round-trips exactly") {
    RandomStream rng(4);
    Matrix m(3, 50);
    for (Index i = 0; i < m.size(); ++i) m.data()[i] = rng.normal() * std::pow(10.0, static_cast<double>(rng.below(20)) - 10.0);
    m(0, 0) = 0.1;
    m(1, 0) = -0.0;
    m(2, 0) = std::numeric_limits<double>::max();
    std::ostringstream out;
    write_matrix_csv(out, m);
    std::istringstream in(out.str());
    CHECK(read_matrix_csv(in) == m);
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(3.0) == "3");

    const auto path = (std::filesystem::temp_directory_path() / "inspect_csv_roundtrip.csv").string();
    write_matrix_csv(path, m, '\t');
    CHECK(read_matrix_csv(path, CsvOptions{'\t'}) == m);
    std::filesystem::remove(path);
}
