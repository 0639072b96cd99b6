#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include <doctest.h>

#include "redkit/csv.hpp"
#include "redkit/errors.hpp"
#include "redkit/report.hpp"

using redkit::validation_error;

namespace {

struct TempFile {
    std::string path;
    TempFile(const std::string& name, const std::string& content) : path(name) {
        std::ofstream out(path);
        out << content;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("joint table csv") {
    TempFile f("tmp_joint.csv",
               "# correlated bit\n"
               "sizes,2,2\n"
               "0,0,0.5\n"
               "1,1,0.5\n");
    const auto t = redkit::csv::read_joint_table(f.path);
    CHECK(t.sizes() == std::vector<std::size_t>{2, 2});
    CHECK(t.probs()[0] == 0.5);
    CHECK(t.probs()[1] == 0.0);
    CHECK(t.probs()[3] == 0.5);
}

TEST_CASE("joint table csv errors carry line numbers") {
    TempFile f("tmp_joint_bad.csv", "sizes,2,2\n0,0,0.5\n1,oops,0.5\n");
    try {
        (void)redkit::csv::read_joint_table(f.path);
        FAIL("expected validation_error");
    } catch (const validation_error& e) {
        CHECK(std::string(e.what()).find(":3:") != std::string::npos);
    }

    TempFile g("tmp_joint_nohdr.csv", "0,0,0.5\n");
    CHECK_THROWS_AS((void)redkit::csv::read_joint_table(g.path), validation_error);

    TempFile h("tmp_joint_oob.csv", "sizes,2,2\n0,5,1.0\n");
    CHECK_THROWS_AS((void)redkit::csv::read_joint_table(h.path), validation_error);

    CHECK_THROWS_AS((void)redkit::csv::read_joint_table("no_such_file.csv"),
                    validation_error);
}

TEST_CASE("matrix and multi-matrix csv") {
    TempFile f("tmp_matrix.csv", "1.0,0.5\n0.5,1.0\n");
    const auto m = redkit::csv::read_matrix(f.path);
    CHECK(m.rows == 2);
    CHECK(m.at(0, 1) == 0.5);

    TempFile ragged("tmp_ragged.csv", "1.0,0.5\n0.5\n");
    CHECK_THROWS_AS((void)redkit::csv::read_matrix(ragged.path), validation_error);

    TempFile multi("tmp_multi.csv", "1,0\n0,1\n---\n0,1\n1,0\n");
    const auto ms = redkit::csv::read_matrices(multi.path);
    CHECK(ms.size() == 2);
    CHECK(ms[1].at(0, 1) == 1.0);
}

TEST_CASE("values, int rows and pairs") {
    TempFile f("tmp_values.csv", "2\n1,1\n");
    CHECK(redkit::csv::read_values(f.path) == std::vector<double>{2.0, 1.0, 1.0});

    TempFile g("tmp_ints.csv", "0,1\n1,0\n");
    const auto rows = redkit::csv::read_int_rows(g.path);
    CHECK(rows.size() == 2);
    CHECK(rows[0][1] == 1);
    TempFile bad("tmp_ints_bad.csv", "0,1.5\n");
    CHECK_THROWS_AS((void)redkit::csv::read_int_rows(bad.path), validation_error);

    TempFile p("tmp_pairs.csv", "0.1,1.5\n0.2,2.5\n");
    const auto pairs = redkit::csv::read_pairs(p.path);
    CHECK(pairs.size() == 2);
    CHECK(pairs[1].second == 2.5);
    TempFile wide("tmp_pairs_wide.csv", "0.1,1.5,9\n");
    CHECK_THROWS_AS((void)redkit::csv::read_pairs(wide.path), validation_error);
}

TEST_CASE("float formatting is 9 significant digits") {
    CHECK(redkit::format_double(0.4) == "0.4");
    CHECK(redkit::format_double(0.6931471805599453) == "0.693147181");
    CHECK(redkit::format_double(1.0) == "1");
    CHECK(redkit::format_double(-0.125) == "-0.125");
    CHECK(redkit::format_double(1e-12) == "1e-12");
}

TEST_CASE("fnv1a64 digest matches the reference vector") {
    TempFile f("tmp_digest.txt", "abc");
    CHECK(redkit::fnv1a64_hex(f.path) == "e71fa2190541574b");
    CHECK_THROWS_AS((void)redkit::fnv1a64_hex("missing_file.bin"), validation_error);
}

TEST_CASE("report json: stable order, escaped strings, finite values") {
    TempFile f("tmp_input.csv", "sizes,2,2\n0,0,1.0\n");
    redkit::Report report("discrete");
    report.add_input("table", f.path);
    report.add_result("kernel", std::string("kl"));
    report.add_result("redundancy", 0.6931471805599453);
    report.add_result("dpi_holds", true);
    report.add_result("rows", 4L);
    const double band[2] = {0.4, 0.4};
    report.add_result("band", std::span<const double>(band, 2));

    const std::string json = report.to_json();
    const std::string expected =
        "{\"schema_version\":\"1\",\"command\":\"discrete\",\"inputs\":{"
        "\"table\":{\"path\":\"tmp_input.csv\",\"fnv1a64\":\"" +
        redkit::fnv1a64_hex(f.path) +
        "\"}},\"results\":{\"kernel\":\"kl\",\"redundancy\":0.693147181,"
        "\"dpi_holds\":true,\"rows\":4,\"band\":[0.4,0.4]}}";
    CHECK(json == expected);

    redkit::Report again("discrete");
    again.add_input("table", f.path);
    again.add_result("kernel", std::string("kl"));
    again.add_result("redundancy", 0.6931471805599453);
    again.add_result("dpi_holds", true);
    again.add_result("rows", 4L);
    again.add_result("band", std::span<const double>(band, 2));
    CHECK(again.to_json() == json);

    redkit::Report nonfinite("x");
    CHECK_THROWS_AS(nonfinite.add_result("bad", std::nan("")), redkit::numeric_error);
}

TEST_CASE("trajectory csv writer") {
    redkit::Trajectory traj;
    traj.values = {0.9, 0.5, 0.4};
    traj.band_lo = 0.4;
    traj.band_hi = 0.5;
    redkit::csv::write_trajectory("tmp_traj.csv", traj);
    std::ifstream in("tmp_traj.csv");
    std::string header, row0;
    std::getline(in, header);
    std::getline(in, row0);
    CHECK(header == "step,R");
    CHECK(row0 == "0,0.90000000000000002");
    std::remove("tmp_traj.csv");
}
