#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include <nlohmann/json.hpp>

#include "winratio/demos.hpp"
#include "winratio/detail/sha256.hpp"
#include "winratio/trial_io.hpp"

using namespace winratio;

TEST_CASE("long CSV parsing and grouping") {
    std::istringstream in("arm,time,event\nA,1,1\nB,2.5,0\nA,3,1\nB,4,1\n");
    const TrialDataset ds = parse_long_csv(in, "t");
    REQUIRE(ds.arms.size() == 2);
    CHECK(ds.arms[0].label == "A");
    REQUIRE(ds.arms[0].records.size() == 2);
    CHECK(ds.arms[0].records[0].time == 1.0);
    CHECK(ds.arms[0].records[0].event);
    CHECK(ds.arms[1].records[0].time == 2.5);
    CHECK_FALSE(ds.arms[1].records[0].event);
}

TEST_CASE("CSV rejections carry line numbers and fields") {
    auto parse = [](const std::string& text) {
        std::istringstream in(text);
        return parse_long_csv(in, "t");
    };
    CHECK_THROWS_WITH(parse("arm,time,event\nA,-1,1\nB,1,1\n"),
                      Catch::Matchers::ContainsSubstring("line 2") &&
                          Catch::Matchers::ContainsSubstring("negative"));
    CHECK_THROWS_WITH(parse("arm,time,event\nA,abc,1\nB,1,1\n"),
                      Catch::Matchers::ContainsSubstring("time"));
    CHECK_THROWS_WITH(parse("arm,time,event\nA,1,2\nB,1,1\n"),
                      Catch::Matchers::ContainsSubstring("event"));
    CHECK_THROWS_WITH(parse("arm,time,event\nA,1,1\narm,time,event\nB,1,1\n"),
                      Catch::Matchers::ContainsSubstring("duplicate header"));
    CHECK_THROWS_WITH(parse("time,event\nA,1,1\n"),
                      Catch::Matchers::ContainsSubstring("expected header"));
    CHECK_THROWS_WITH(parse("arm,time,event\nA,1\n"),
                      Catch::Matchers::ContainsSubstring("3 columns"));
    CHECK_THROWS_WITH(parse("arm,time,event\n,1,1\n"),
                      Catch::Matchers::ContainsSubstring("empty arm label"));
    CHECK_THROWS_AS(parse(""), DataError);
    CHECK_THROWS_AS(parse("arm,time,event\nA,1,1\nA,2,1\n"), DataError);  // single arm
    // windows line endings are tolerated
    std::istringstream crlf("arm,time,event\r\nA,1,1\r\nB,2,1\r\n");
    CHECK(parse_long_csv(crlf, "t").arms.size() == 2);
}

TEST_CASE("sha256 digests match the published test vectors") {
    CHECK(detail::Sha256::of("") ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(detail::Sha256::of("abc") ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(detail::Sha256::of(std::string(1000, 'a')) ==
          "41edece42d63e8d9bf515a9ba6932e1c20cbc9f5a5d134645adb5db1b9737ea3");
}

TEST_CASE("text report pins the documented precision") {
    const demos::DemoRun run = demos::run_table1();
    const std::string text = render_report(run.report, ReportFormat::text);
    CHECK_THAT(text, Catch::Matchers::ContainsSubstring("0.58000000"));
    CHECK_THAT(text, Catch::Matchers::ContainsSubstring("1.38095"));
    CHECK_THAT(text, Catch::Matchers::ContainsSubstring("2.33333"));
    CHECK_THAT(text, Catch::Matchers::ContainsSubstring("WR 1.5 "));
    // Pr(x<y) = 0.58 means y wins that pairing
    CHECK_THAT(text, Catch::Matchers::ContainsSubstring("y > x"));
    CHECK_THAT(text, Catch::Matchers::ContainsSubstring("z > y"));
    CHECK_THAT(text, Catch::Matchers::ContainsSubstring("x > z"));
}

TEST_CASE("empty cycle section prints the fixed sentence") {
    AnalysisOptions options;
    const AnalysisReport report =
        analyze_specs("three-normals",
                      {DistributionSpec::normal(0, 1), DistributionSpec::normal(1, 1),
                       DistributionSpec::normal(2, 1)},
                      options);
    const std::string text = render_report(report, ReportFormat::text);
    CHECK_THAT(text, Catch::Matchers::ContainsSubstring("No non-transitive loops detected."));
    CHECK_THAT(text, Catch::Matchers::ContainsSubstring("ALL_SYMMETRIC_PDF"));
}

TEST_CASE("csv report round-trips WR and AUC at format precision") {
    const demos::DemoRun run = demos::run_figure1();
    const std::string csv = render_report(run.report, ReportFormat::csv);
    std::istringstream in(csv);
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line == "winner,loser,relation,wins_winner,wins_loser,indeterminate,auc,wr,strength");
    int rows = 0;
    while (std::getline(in, line)) {
        std::vector<std::string> f;
        std::size_t start = 0;
        for (;;) {
            const std::size_t c = line.find(',', start);
            f.push_back(line.substr(start, c - start));
            if (c == std::string::npos) break;
            start = c + 1;
        }
        REQUIRE(f.size() == 9);
        const double auc = std::stod(f[6]);
        const double wr = std::stod(f[7]);
        CHECK_THAT(wr_from_auc(auc), Catch::Matchers::WithinAbs(wr, 1e-4));
        const double ww = std::stod(f[3]), wl = std::stod(f[4]);
        CHECK(ww >= wl);  // winner listed first
        CHECK_THAT(auc, Catch::Matchers::WithinAbs(ww / (ww + wl), 1e-8));
        ++rows;
    }
    CHECK(rows == 6);
}

TEST_CASE("json tree has the stable key skeleton and the loop pattern") {
    const demos::DemoRun run = demos::run_figure1();
    const std::string text = render_report(run.report, ReportFormat::json_tree);
    const nlohmann::ordered_json j = nlohmann::ordered_json::parse(text);

    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    CHECK(keys == std::vector<std::string>{"dataset", "options", "pairwise", "cycles",
                                           "audits", "certificates"});

    // precedence-order canonical sequences sort as (A,D,B) < (A,D,C) < (A,D,C,B);
    // their beats-direction chains are the published loop pattern
    REQUIRE(j["cycles"].size() == 3);
    CHECK(j["cycles"][0]["nodes"].size() == 3);
    CHECK(j["cycles"][1]["nodes"].size() == 3);
    CHECK(j["cycles"][2]["nodes"].size() == 4);
    CHECK(j["cycles"][0]["beats"] == "A > B > D > A");
    CHECK(j["cycles"][1]["beats"] == "A > C > D > A");
    CHECK(j["cycles"][2]["beats"] == "A > B > C > D > A");
    for (const auto& a : j["audits"]) CHECK(a["satisfied"] == true);
    CHECK(j["options"]["input_digest"].is_string());

    // all six synthetic comparisons are weak and close to 1/2
    for (const auto& p : j["pairwise"]) {
        const double auc = p["auc"];
        const double oriented = auc > 0.5 ? auc : 1.0 - auc;
        CHECK(oriented > 0.5);
        CHECK(oriented < 0.52);
    }
}

TEST_CASE("reports are byte-deterministic and thread-count independent") {
    AnalysisOptions opt1;
    opt1.threads = 1;
    AnalysisOptions opt4;
    opt4.threads = 4;
    const TrialDataset ds = demos::synthetic_four_arm_dataset();
    const AnalysisReport r1 = analyze_arms(ds.name, ds.arms, opt1);
    const AnalysisReport r1b = analyze_arms(ds.name, ds.arms, opt1);
    const AnalysisReport r4 = analyze_arms(ds.name, ds.arms, opt4);
    for (ReportFormat f : {ReportFormat::text, ReportFormat::csv, ReportFormat::json_tree}) {
        CHECK(render_report(r1, f) == render_report(r1b, f));
        CHECK(render_report(r1, f) == render_report(r4, f));
    }
}

TEST_CASE("surface file rendering") {
    const std::string text = render_surface(export_surface(3));
    std::istringstream in(text);
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line == "a,b,c_lo,c_hi");
    int rows = 0;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 9);
    const std::string wr_text = render_surface(export_surface(3, SurfaceView::wr));
    CHECK_THAT(wr_text, Catch::Matchers::ContainsSubstring("wr_a,wr_b,wr_c_lo,wr_c_hi"));
    CHECK_THAT(wr_text, Catch::Matchers::ContainsSubstring("inf"));
}
