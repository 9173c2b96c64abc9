#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "disrupt/csv.hpp"
#include "disrupt/linalg.hpp"
#include "disrupt/rng.hpp"
#include "disrupt/special_math.hpp"

using namespace disrupt;

TEST_SUITE("rng") {

TEST_CASE("splitmix64 reference sequence") {
    // first outputs for seed 1234567 published with the algorithm
    SplitMix64 g(1234567);
    CHECK(g.next_u64() == 6457827717110365317ull);
    CHECK(g.next_u64() == 3203168211198807973ull);
}

TEST_CASE("next_below stays in range and covers values") {
    SplitMix64 g(99);
    std::vector<int> seen(7, 0);
    for (int i = 0; i < 2000; ++i) {
        const uint64_t v = g.next_below(7);
        REQUIRE(v < 7);
        ++seen[v];
    }
    for (const int c : seen) CHECK(c > 0);
}

TEST_CASE("normal and poisson moments") {
    SplitMix64 g(7);
    double sum = 0, ss = 0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double v = g.next_normal();
        sum += v;
        ss += v * v;
    }
    CHECK(std::fabs(sum / n) < 0.01);
    CHECK(std::fabs(ss / n - 1.0) < 0.02);

    double psum = 0;
    for (int i = 0; i < n; ++i) psum += static_cast<double>(g.next_poisson(8.0));
    CHECK(std::fabs(psum / n - 8.0) < 0.05);
}

}  // TEST_SUITE rng

TEST_SUITE("special_math") {

TEST_CASE("normal tails") {
    CHECK(normal_cdf(0.0) == doctest::Approx(0.5));
    CHECK(normal_sf(1.959963985) == doctest::Approx(0.025).epsilon(1e-6));
    CHECK(two_sided_p_from_z(1.959963985) == doctest::Approx(0.05).epsilon(1e-6));
}

TEST_CASE("chi-square survival against fixed values") {
    CHECK(chi2_sf(3.841458821, 1) == doctest::Approx(0.05).epsilon(1e-8));
    CHECK(chi2_sf(5.991464547, 2) == doctest::Approx(0.05).epsilon(1e-8));
    CHECK(chi2_sf(18.30703805, 10) == doctest::Approx(0.05).epsilon(1e-8));
    CHECK(chi2_sf(0.0, 4) == doctest::Approx(1.0));
}

TEST_CASE("student t survival") {
    CHECK(two_sided_p_from_t(2.228138852, 10) == doctest::Approx(0.05).epsilon(1e-8));
    CHECK(two_sided_p_from_t(1.959963985, 1e7) == doctest::Approx(0.05).epsilon(1e-4));
    CHECK(student_t_sf(0.0, 5) == doctest::Approx(0.5));
}

}  // TEST_SUITE special_math

TEST_SUITE("linalg") {

TEST_CASE("qr solves a known system exactly") {
    // y = 3 + 2a - b on four points, exact fit
    Matrix x(4, 3);
    const double a[] = {0, 1, 2, 3}, b[] = {1, 0, 1, 2};
    std::vector<double> y(4);
    for (size_t i = 0; i < 4; ++i) {
        x(i, 0) = a[i];
        x(i, 1) = b[i];
        x(i, 2) = 1.0;
        y[i] = 3 + 2 * a[i] - b[i];
    }
    const auto r = qr_least_squares(x, y);
    REQUIRE(r.full_rank);
    CHECK(r.beta[0] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(r.beta[1] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(r.beta[2] == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("rank deficiency names the duplicated column") {
    Matrix x(5, 3);
    for (size_t i = 0; i < 5; ++i) {
        x(i, 0) = static_cast<double>(i);
        x(i, 1) = static_cast<double>(i);  // exact copy
        x(i, 2) = 1.0;
    }
    std::vector<double> y(5, 1.0);
    const auto r = qr_least_squares(x, y);
    CHECK_FALSE(r.full_rank);
    REQUIRE(r.deficient_cols.size() == 1);
    CHECK(r.deficient_cols[0] == 1);
}

TEST_CASE("xtx inverse matches a direct 2x2 inverse") {
    Matrix x(3, 2);
    x(0, 0) = 1; x(0, 1) = 1;
    x(1, 0) = 2; x(1, 1) = 1;
    x(2, 0) = 4; x(2, 1) = 1;
    std::vector<double> y{1, 2, 3};
    const auto r = qr_least_squares(x, y);
    const Matrix inv = xtx_inverse_from_r(r.r);
    // X'X = [[21, 7], [7, 3]], det = 14
    CHECK(inv(0, 0) == doctest::Approx(3.0 / 14).epsilon(1e-12));
    CHECK(inv(0, 1) == doctest::Approx(-7.0 / 14).epsilon(1e-12));
    CHECK(inv(1, 1) == doctest::Approx(21.0 / 14).epsilon(1e-12));
}

TEST_CASE("cholesky solve and spd inverse") {
    Matrix a(2, 2);
    a(0, 0) = 4; a(0, 1) = 2; a(1, 0) = 2; a(1, 1) = 3;
    std::vector<double> x;
    REQUIRE(cholesky_solve(a, std::vector<double>{8, 7}, x));
    CHECK(x[0] == doctest::Approx(1.25));
    CHECK(x[1] == doctest::Approx(1.5));
    Matrix inv;
    REQUIRE(spd_inverse(a, inv));
    CHECK(inv(0, 0) == doctest::Approx(3.0 / 8));
    CHECK(inv(1, 0) == doctest::Approx(-2.0 / 8));

    Matrix bad(2, 2);  // singular
    bad(0, 0) = 1; bad(0, 1) = 1; bad(1, 0) = 1; bad(1, 1) = 1;
    CHECK_FALSE(spd_inverse(bad, inv));
}

}  // TEST_SUITE linalg

TEST_SUITE("csv") {

TEST_CASE("field splitting with quotes and trailing delimiters") {
    std::vector<std::string_view> f;
    std::string storage;
    split_fields("a,b,,d", ',', f, storage);
    REQUIRE(f.size() == 4);
    CHECK(f[2].empty());
    split_fields("x,\"a,b\",\"he said \"\"hi\"\"\"", ',', f, storage);
    REQUIRE(f.size() == 3);
    CHECK(f[1] == "a,b");
    CHECK(f[2] == "he said \"hi\"");
    split_fields("a,b,", ',', f, storage);
    REQUIRE(f.size() == 3);
    CHECK(f[2].empty());
}

TEST_CASE("line splitting handles crlf and trailing newline") {
    const auto lines = split_lines("a\r\nb\nc\n");
    REQUIRE(lines.size() == 3);
    CHECK(lines[0] == "a");
    CHECK(lines[1] == "b");
    CHECK(lines[2] == "c");
}

TEST_CASE("format_real uses 10 significant digits") {
    CHECK(format_real(0.6931471805599453) == "0.6931471806");
    CHECK(format_real(3.0) == "3");
    CHECK(format_real(-0.25) == "-0.25");
}

TEST_CASE("gzip transparent slurp") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "disrupt_csv_test";
    fs::create_directories(dir);
    const std::string plain = (dir / "t.txt").string();
    {
        std::ofstream out(plain);
        out << "hello,world\n1,2\n";
    }
    REQUIRE(std::system(("gzip -kf " + plain).c_str()) == 0);
    CHECK(slurp_file(plain) == slurp_file(plain + ".gz"));
    fs::remove_all(dir);
}

TEST_CASE("atomic writer leaves no partial file") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "disrupt_atomic_test";
    fs::create_directories(dir);
    const std::string target = (dir / "out.csv").string();
    {
        AtomicWriter w(target);
        w.stream() << "data\n";
        // no commit: destructor must discard
    }
    CHECK_FALSE(fs::exists(target));
    CHECK_FALSE(fs::exists(target + ".tmp"));
    {
        AtomicWriter w(target);
        w.stream() << "data\n";
        w.commit();
    }
    CHECK(fs::exists(target));
    fs::remove_all(dir);
}

}  // TEST_SUITE csv
