#include <catch_amalgamated.hpp>

#include <sstream>

#include "dlchess/bench.hpp"

using namespace dlchess;

namespace {

const AttackTables& direct_tables() {
    static const AttackTables t = build_attack_tables();
    return t;
}

const RotatedTables& rotated_tables() {
    static const RotatedTables t = build_rotated_tables();
    return t;
}

std::vector<EpdRecord> small_corpus() {
    static const auto corpus = generate_corpus(40, 3, direct_tables());
    return corpus;
}

}  // namespace

TEST_CASE("read_corpus", "[bench][corpus]") {
    SECTION("file order, ids and the skip policy") {
        std::ostringstream text;
        for (int i = 0; i < 10; ++i) {
            if (i == 4) text << "rnbqkbnr/ppppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR w KQkq -\n";  // nine files
            else text << "rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR w KQkq - id \"p" << i << "\";\n";
        }
        std::istringstream in(text.str());
        std::ostringstream warnings;
        const auto corpus = read_corpus(in, false, warnings);
        CHECK(corpus.size() == 9);
        CHECK(corpus.front().id == "p0");
        CHECK(corpus.back().id == "p9");
        CHECK(warnings.str().find("line 5") != std::string::npos);

        std::istringstream strict_in(text.str());
        CHECK_THROWS_AS(read_corpus(strict_in, true, warnings), CorpusError);
    }

    SECTION("empty input") {
        std::istringstream in("\n# only a comment\n");
        std::ostringstream warnings;
        CHECK_THROWS_WITH(read_corpus(in, false, warnings), "empty corpus");
    }

    SECTION("unreadable file") {
        std::ostringstream warnings;
        CHECK_THROWS_AS(load_corpus("/nonexistent/corpus.epd", false, warnings), CorpusError);
    }
}

TEST_CASE("generated corpus", "[bench][corpus]") {
    const auto a = generate_corpus(25, 17, direct_tables());
    const auto b = generate_corpus(25, 17, direct_tables());
    REQUIRE(a.size() == 25);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].position == b[i].position);
        CHECK(a[i].id == b[i].id);
        CHECK(popcount(a[i].position.occupied()) >= 12);
        // EPD text parses back to the same board.
        const auto back = parse_epd_line(to_epd(a[i]));
        REQUIRE(back);
        CHECK(board_field(back->position) == board_field(a[i].position));
        CHECK(back->id == a[i].id);
    }
}

TEST_CASE("precompute_boards", "[bench]") {
    const std::vector<EpdRecord> start{{parse_fen(kStartFen), "start"}};
    const auto boards = precompute_boards(start, rotated_tables().maps);
    REQUIRE(boards.size() == 1);
    CHECK(popcount(boards[0].rotated.occ) == 32);
    CHECK(popcount(boards[0].rotated.occ90) == 32);
    CHECK(popcount(boards[0].rotated.occ45ne) == 32);
    CHECK(popcount(boards[0].rotated.occ45nw) == 32);

    const auto corpus = small_corpus();
    const auto many = precompute_boards(corpus, rotated_tables().maps);
    CHECK(many.size() == corpus.size());
    for (const auto& b : many) CHECK(b.rotated == make_rotated_state(b.position.occupied(), rotated_tables().maps));
}

TEST_CASE("run_bench", "[bench]") {
    const auto boards = precompute_boards(small_corpus(), rotated_tables().maps);
    BenchConfig config;
    config.repetitions = 10;
    config.warmup = 1;

    const BenchReport report = run_bench(config, boards, &direct_tables(), &rotated_tables());
    REQUIRE(report.results.size() == 2);
    const auto* rot = report.find(BackendKind::Rotated);
    const auto* dir = report.find(BackendKind::Direct);
    REQUIRE(rot);
    REQUIRE(dir);
    CHECK(rot->moves_per_pass == dir->moves_per_pass);
    CHECK(rot->total_moves == 10 * rot->moves_per_pass);
    CHECK(rot->generation_calls == 10 * boards.size());
    CHECK(dir->generation_calls == 10 * boards.size());
    CHECK(rot->builds_during_timing == 0);
    CHECK(dir->builds_during_timing == 0);
    CHECK(report.ratio().has_value());
    CHECK(report.positions == boards.size());

    SECTION("missing tables are rejected before timing") {
        CHECK_THROWS_AS(run_bench(config, boards, nullptr, &rotated_tables()), std::invalid_argument);
        const AttackTables empty{};
        CHECK_THROWS_AS(run_bench(config, boards, &empty, &rotated_tables()), std::invalid_argument);
        config.backends = {BackendKind::Rotated};
        CHECK_NOTHROW(run_bench(config, boards, nullptr, &rotated_tables()));
    }

    SECTION("invalid configs") {
        config.repetitions = 0;
        CHECK_THROWS_AS(run_bench(config, boards, &direct_tables(), &rotated_tables()), std::invalid_argument);
        config.repetitions = 1;
        config.backends.clear();
        CHECK_THROWS_AS(run_bench(config, boards, &direct_tables(), &rotated_tables()), std::invalid_argument);
    }
}

TEST_CASE("emit_report", "[bench][report]") {
    BenchReport r;
    r.environment = "Linux 6.1, \"test\" box";
    r.positions = 879;
    r.repetitions = 10;
    r.results.push_back({BackendKind::Rotated, 1.2345678901234567, 0.12345678901234567, 0.1, 1.4e-5, 31000, 310000, 8790, 0});
    r.results.push_back({BackendKind::Direct, 1.0733, 0.10733, 0.099, 1.2e-5, 31000, 310000, 8790, 0});

    SECTION("csv round trip") {
        const std::string csv = emit_report(r, ReportFormat::Csv);
        CHECK(csv.rfind(std::string(kCsvHeader) + "\n", 0) == 0);
        CHECK(csv.find('\r') == std::string::npos);
        CHECK(parse_csv_report(csv) == r);
    }

    SECTION("markdown mirrors the comparison table") {
        const std::string md = emit_report(r, ReportFormat::Markdown);
        CHECK(md.find("| OS and CPU | Rotated Bitboards Time (s) | Direct Lookup Time (s) | Ratio (rotated/direct) |") == 0);
        CHECK(md.find("1.150") != std::string::npos);  // 1.2345678901234567 / 1.0733
        CHECK(md.find("31000") != std::string::npos);
    }

    SECTION("single backend omits the ratio") {
        r.results.pop_back();
        const std::string md = emit_report(r, ReportFormat::Markdown);
        CHECK(md.find("Direct Lookup Time") == std::string::npos);
        CHECK(md.find("Ratio") == std::string::npos);
        CHECK(emit_report(r, ReportFormat::Text).find("ratio") == std::string::npos);
        CHECK(parse_csv_report(emit_report(r, ReportFormat::Csv)) == r);
    }

    SECTION("text") {
        const std::string text = emit_report(r, ReportFormat::Text);
        CHECK(text.find("ratio rotated/direct: 1.150") != std::string::npos);
    }

    CHECK_THROWS_AS(parse_csv_report("nope\n"), std::invalid_argument);
    CHECK(parse_report_format("csv") == ReportFormat::Csv);
    CHECK_THROWS_AS(parse_report_format("xml"), std::invalid_argument);
}
