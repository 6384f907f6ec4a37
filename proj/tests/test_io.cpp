#include "semichar/io.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>

using namespace semichar;

namespace {

RealizedGroup round_trip(const RealizedGroup& g, GroupFileKind kind) {
    return parse_group_json(json::parse(export_group_string(g, kind)));
}

} // namespace

TEST_CASE("table files") {
    const json c2 = {{"format", "semichar-group"}, {"version", 1}, {"kind", "table"},
                     {"order", 2},                 {"mul", {0, 1, 1, 0}}};
    const RealizedGroup g = parse_group_json(c2);
    CHECK(g.order() == 2);
    CHECK(g.table.identity() == 0);

    // Missing inverse is rejected.
    json bad = c2;
    bad["mul"] = {0, 1, 1, 1};
    CHECK_THROWS_AS(parse_group_json(bad), InputError);

    // Unknown versions and kinds are rejected.
    bad = c2;
    bad["version"] = 9;
    CHECK_THROWS_AS(parse_group_json(bad), InputError);
    bad = c2;
    bad["kind"] = "mystery";
    CHECK_THROWS_AS(parse_group_json(bad), InputError);
    CHECK_THROWS_AS(parse_group_json(json::array()), InputError);
}

TEST_CASE("generator files") {
    const json s3 = {{"format", "semichar-group"},
                     {"version", 1},
                     {"kind", "permutation-generators"},
                     {"generators", {"(1 2)", "(1 2 3)"}}};
    CHECK(parse_group_json(s3).order() == 6);

    // Matrix generators over GF(3): the two standard SL(2,3) generators.
    const json sl23 = {{"format", "semichar-group"},
                       {"version", 1},
                       {"kind", "matrix-generators"},
                       {"field", {{"p", 3}, {"e", 1}}},
                       {"dim", 2},
                       {"generators",
                        {{{{0}, {2}}, {{1}, {0}}}, {{{1}, {1}}, {{0}, {1}}}}}};
    CHECK(parse_group_json(sl23).order() == 24);

    // A wrong modulus is rejected.
    json bad = sl23;
    bad["field"]["modulus"] = {1, 1};
    CHECK_THROWS_AS(parse_group_json(bad), InputError);
}

TEST_CASE("export round trips") {
    const auto c3 = make_cyclic(3);
    const RealizedGroup back = round_trip(c3, GroupFileKind::table);
    CHECK(back.table.mul_data() == c3.table.mul_data());

    // Byte-identical canonical export: parse / export is the identity on
    // canonical table files.
    const std::string once = export_group_string(c3, GroupFileKind::table);
    const std::string twice = export_group_string(round_trip(c3, GroupFileKind::table),
                                                  GroupFileKind::table);
    CHECK(once == twice);

    // Labels survive.
    const auto s3 = make_symmetric(3);
    const RealizedGroup s3back = round_trip(s3, GroupFileKind::table);
    REQUIRE(s3back.table.labels());
    CHECK(s3back.table.label(1) == s3.table.label(1));

    // Generator export closes back to a group of the same order.
    const RealizedGroup s3gen = round_trip(s3, GroupFileKind::generators);
    CHECK(s3gen.order() == 6);
    const auto gl23 = make_gl2(3);
    CHECK(round_trip(gl23, GroupFileKind::generators).order() == 48);

    // Table export is refused over the cap, pointing at the generator form.
    GroupFileOptions tight;
    tight.table_export_cap = 5;
    try {
        export_group_string(s3, GroupFileKind::table, tight);
        FAIL("expected CapExceeded");
    } catch (const CapExceeded& e) {
        CHECK(std::string(e.what()).find("generator") != std::string::npos);
    }

    // File-level round trip.
    const std::string path = "io_roundtrip_tmp.json";
    export_group_file(c3, path, GroupFileKind::table);
    const RealizedGroup from_file = parse_group_file(path);
    CHECK(from_file.order() == 3);
    std::remove(path.c_str());
    CHECK_THROWS_AS(parse_group_file("does_not_exist.json"), InputError);
}

TEST_CASE("report rendering is deterministic") {
    const auto g = build_family("q8");
    RunReport r;
    r.descriptor = "q8";
    r.group_order = 8;
    const auto verdict = conjecture_check(g.table);
    r.dual = verdict.dual;
    r.holds = verdict.holds;
    r.valuations = verdict.valuations;
    r.elapsed_ms = 1.0;

    const std::string text = render_text(r);
    CHECK(text.find("|Ghat| = 2^4 = 16") != std::string::npos);
    CHECK(text.find("invariant factors: [2, 2, 4]") != std::string::npos);
    CHECK(text.find("HOLDS") != std::string::npos);

    json j = render_json(r);
    CHECK(j["holds"] == true);
    CHECK(j["dual_order"] == "16");
    j.erase("elapsed_ms");
    json j2 = render_json(r);
    j2.erase("elapsed_ms");
    CHECK(j == j2);
}
