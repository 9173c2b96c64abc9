#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "disrupt/errors.hpp"
#include "disrupt/table.hpp"

using namespace disrupt;

TEST_SUITE("table") {

TEST_CASE("read, missing cells, write round trip") {
    namespace fs = std::filesystem;
    const auto path = (fs::temp_directory_path() / "disrupt_table.csv").string();
    {
        std::ofstream out(path);
        out << "id,a,b\nr1,1.5,\nr2,,3\nr3,2,4\n";
    }
    const DataTable t = read_table(path);
    REQUIRE(t.n_rows() == 3);
    CHECK(t.cell(0, t.require_col("a")) == 1.5);
    CHECK(is_missing(t.cell(0, t.require_col("b"))));
    CHECK(is_missing(t.cell(1, 0)));
    CHECK(t.cell(2, 1) == 4.0);
    CHECK_THROWS_AS(t.require_col("zzz"), UserError);

    std::ostringstream os;
    write_table(t, "id", os);
    CHECK(os.str() == "id,a,b\nr1,1.5,\nr2,,3\nr3,2,4\n");
    fs::remove(path);
}

TEST_CASE("bad numeric cells name the column") {
    namespace fs = std::filesystem;
    const auto path = (fs::temp_directory_path() / "disrupt_table_bad.csv").string();
    {
        std::ofstream out(path);
        out << "id,a\nr1,oops\n";
    }
    CHECK_THROWS_WITH_AS(read_table(path), doctest::Contains("column a"), UserError);
    fs::remove(path);
}

TEST_CASE("inner join keeps left order and drops collisions") {
    DataTable left;
    left.names = {"a"};
    left.cols = {{1, 2, 3}};
    left.row_ids = {"x", "y", "z"};
    DataTable right;
    right.names = {"a", "b"};
    right.cols = {{9, 8}, {10, 20}};
    right.row_ids = {"z", "x"};
    const DataTable j = inner_join(left, right);
    REQUIRE(j.n_rows() == 2);
    CHECK(j.row_ids == std::vector<std::string>{"x", "z"});
    REQUIRE(j.names == std::vector<std::string>{"a", "b"});
    CHECK(j.cell(0, 0) == 1.0);  // left column wins
    CHECK(j.cell(0, 1) == 20.0);
    CHECK(j.cell(1, 1) == 10.0);
}

}  // TEST_SUITE table
