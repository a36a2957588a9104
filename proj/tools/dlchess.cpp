// dlchess: attack tables, perft, oracle verification and the backend benchmark.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <string>

#include "CLI11.hpp"
#include "dlchess/dlchess.hpp"

using namespace dlchess;

namespace {

AttackTables obtain_tables(const std::string& path) {
    if (!path.empty()) return load_tables_file(path);
    return build_attack_tables();
}

void print_cardinalities(const AttackTables& t) {
    auto row = [](const char* name, const AttackTable& table) {
        std::cout << name << ": " << table.mover_count() << " first-level keys, " << table.square_entry_count()
                  << " square entries" << (table.has_base_key() ? " (+1 base entry)" : "") << '\n';
    };
    row("rank_attacks    ", t.rank);
    row("file_attacks    ", t.file);
    row("diag_attacks_ne ", t.diag_ne);
    row("diag_attacks_nw ", t.diag_nw);
}

std::vector<BackendKind> backends_from(const std::string& s) {
    if (s == "both") return {BackendKind::Rotated, BackendKind::Direct};
    return {parse_backend(s)};
}

int cmd_perft(const std::string& fen, int depth, const std::string& backend, const std::string& tables_path) {
    const Position pos = parse_fen(fen);
    std::uint64_t first = 0;
    bool have_first = false;
    for (BackendKind k : backends_from(backend)) {
        const auto t0 = std::chrono::steady_clock::now();
        std::uint64_t nodes = 0;
        if (k == BackendKind::Direct) {
            const AttackTables tables = obtain_tables(tables_path);
            nodes = perft(pos, depth, DirectBackend(tables));
        } else {
            const RotatedTables tables = build_rotated_tables();
            nodes = perft(pos, depth, RotatedBackend(tables));
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::cout << "perft(" << depth << ") " << backend_name(k) << ": " << nodes << "  (" << secs << " s)\n";
        if (have_first && nodes != first) {
            std::cerr << "error: backends disagree\n";
            return 1;
        }
        first = nodes;
        have_first = true;
    }
    return 0;
}

int cmd_verify(std::uint64_t seed, int count, const std::string& tables_path) {
    const AttackTables direct = obtain_tables(tables_path);
    const RotatedTables rotated = build_rotated_tables();
    std::mt19937_64 rng(seed);
    int mismatches = 0;
    for (int i = 0; i < count; ++i) {
        const Bitboard occ = rng() & rng();
        const Square s{static_cast<int>(rng() % 64)};
        const RotatedState st = make_rotated_state(occ, rotated.maps);
        const struct {
            const char* piece;
            Bitboard expected, got_direct, got_rotated;
        } checks[] = {
            {"rook", oracle::rook_attacks(occ, s), rook_attacks(direct, occ, s), rook_attacks_rotated(st, rotated, s)},
            {"bishop", oracle::bishop_attacks(occ, s), bishop_attacks(direct, occ, s), bishop_attacks_rotated(st, rotated, s)},
            {"queen", oracle::queen_attacks(occ, s), queen_attacks(direct, occ, s), queen_attacks_rotated(st, rotated, s)},
        };
        for (const auto& c : checks) {
            if (c.expected != c.got_direct || c.expected != c.got_rotated) {
                ++mismatches;
                std::cerr << "mismatch: " << c.piece << " on " << s.name() << " occ=0x" << std::hex << occ << " oracle=0x"
                          << c.expected << " direct=0x" << c.got_direct << " rotated=0x" << c.got_rotated << std::dec
                          << '\n';
            }
        }
    }
    std::cout << "verified " << count << " (occupancy, square) pairs x 3 piece types: " << mismatches << " mismatches\n";
    return mismatches == 0 ? 0 : 1;
}

int cmd_bench(const BenchConfig& config, std::uint64_t seed, std::size_t generated_count) {
    config.validate();
    const bool need_direct = std::find(config.backends.begin(), config.backends.end(), BackendKind::Direct) != config.backends.end();
    const AttackTables direct = config.tables_path ? load_tables_file(*config.tables_path) : build_attack_tables();
    const RotatedTables rotated = build_rotated_tables();

    std::vector<EpdRecord> corpus;
    if (config.corpus_path.empty()) {
        corpus = generate_corpus(generated_count, seed, direct);
        std::cerr << "generated " << corpus.size() << " positions (seed " << seed << ")\n";
    } else {
        corpus = load_corpus(config.corpus_path, config.strict, std::cerr);
        std::cerr << "loaded " << corpus.size() << " positions from " << config.corpus_path << '\n';
    }
    const auto boards = precompute_boards(corpus, rotated.maps);
    const BenchReport report = run_bench(config, boards, need_direct ? &direct : nullptr, &rotated);
    std::cout << emit_report(report, config.format);

    const auto* rot = report.find(BackendKind::Rotated);
    const auto* dir = report.find(BackendKind::Direct);
    if (rot && dir && rot->moves_per_pass != dir->moves_per_pass) {
        std::cerr << "error: backends generated different move counts\n";
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Direct-lookup sliding attack tables, rotated-bitboard baseline and benchmark harness"};
    app.require_subcommand(1);

    // tables
    auto* tables = app.add_subcommand("tables", "Build, save or load the direct-lookup attack tables");
    tables->require_subcommand(1);
    auto* tables_build = tables->add_subcommand("build", "Build the tables and print their cardinalities");
    auto* tables_save = tables->add_subcommand("save", "Build the tables and write them to a file");
    auto* tables_load = tables->add_subcommand("load", "Load tables from a file and check them against a fresh build");
    std::string tables_file;
    tables_save->add_option("path", tables_file, "Output file")->required();
    tables_load->add_option("path", tables_file, "Input file")->required();

    // perft
    auto* perft_cmd = app.add_subcommand("perft", "Count leaf nodes of the legal move tree");
    std::string fen{kStartFen};
    int depth = 4;
    std::string backend = "direct";
    std::string tables_path;
    perft_cmd->add_option("--fen", fen, "Position in FEN");
    perft_cmd->add_option("--depth", depth, "Search depth")->check(CLI::Range(0, 8));
    perft_cmd->add_option("--backend", backend, "direct, rotated or both")->check(CLI::IsMember({"direct", "rotated", "both"}));
    perft_cmd->add_option("--tables", tables_path, "Load direct tables from this file");

    // bench
    auto* bench = app.add_subcommand("bench", "Time move generation under each backend");
    BenchConfig config;
    std::string bench_backend = "both";
    std::string format = "text";
    std::string bench_tables;
    std::uint64_t seed = 20070601;
    std::size_t count = 879;
    bench->add_option("--corpus", config.corpus_path, "EPD/FEN file; a corpus is generated when omitted");
    bench->add_option("--backend", bench_backend, "direct, rotated or both")->check(CLI::IsMember({"direct", "rotated", "both"}));
    bench->add_option("--reps", config.repetitions, "Timed repetitions")->check(CLI::PositiveNumber);
    bench->add_option("--warmup", config.warmup, "Untimed warmup repetitions")->check(CLI::NonNegativeNumber);
    bench->add_option("--format", format, "text, csv or markdown")->check(CLI::IsMember({"text", "csv", "markdown"}));
    bench->add_option("--tables", bench_tables, "Load direct tables from this file");
    bench->add_option("--seed", seed, "Seed for the generated corpus");
    bench->add_option("--count", count, "Size of the generated corpus")->check(CLI::PositiveNumber);
    bench->add_flag("--strict", config.strict, "Treat malformed corpus lines as fatal");

    // verify
    auto* verify = app.add_subcommand("verify", "Spot-check both backends against the ray-scan oracle");
    std::uint64_t verify_seed = 1;
    int verify_count = 10000;
    verify->add_option("--seed", verify_seed, "Random seed");
    verify->add_option("--count", verify_count, "Number of random (occupancy, square) pairs")->check(CLI::PositiveNumber);
    verify->add_option("--tables", tables_path, "Load direct tables from this file");

    // corpus
    auto* corpus = app.add_subcommand("corpus", "Position corpus utilities");
    corpus->require_subcommand(1);
    auto* corpus_gen = corpus->add_subcommand("generate", "Write a deterministic pseudo-random EPD corpus");
    std::uint64_t corpus_seed = 20070601;
    std::size_t corpus_count = 879;
    std::string corpus_out;
    corpus_gen->add_option("--seed", corpus_seed, "Random seed");
    corpus_gen->add_option("--count", corpus_count, "Number of positions")->check(CLI::PositiveNumber);
    corpus_gen->add_option("--out", corpus_out, "Output file (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (tables_build->parsed()) {
            const auto t0 = std::chrono::steady_clock::now();
            const AttackTables t = build_attack_tables();
            const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            print_cardinalities(t);
            std::cout << "built in " << secs << " s\n";
            return 0;
        }
        if (tables_save->parsed()) {
            save_tables_file(build_attack_tables(), tables_file);
            std::cout << "saved tables to " << tables_file << '\n';
            return 0;
        }
        if (tables_load->parsed()) {
            const AttackTables loaded = load_tables_file(tables_file);
            print_cardinalities(loaded);
            if (!(loaded == build_attack_tables())) {
                std::cerr << "error: loaded tables differ from a fresh build\n";
                return 1;
            }
            std::cout << "loaded tables match a fresh build\n";
            return 0;
        }
        if (perft_cmd->parsed()) return cmd_perft(fen, depth, backend, tables_path);
        if (bench->parsed()) {
            config.backends = backends_from(bench_backend);
            config.format = parse_report_format(format);
            if (!bench_tables.empty()) config.tables_path = bench_tables;
            return cmd_bench(config, seed, count);
        }
        if (verify->parsed()) return cmd_verify(verify_seed, verify_count, tables_path);
        if (corpus_gen->parsed()) {
            const auto records = generate_corpus(corpus_count, corpus_seed, build_attack_tables());
            std::ofstream file;
            if (!corpus_out.empty()) {
                file.open(corpus_out);
                if (!file) throw std::runtime_error("cannot open '" + corpus_out + "' for writing");
            }
            std::ostream& out = corpus_out.empty() ? std::cout : file;
            for (const auto& rec : records) out << to_epd(rec) << '\n';
            if (!corpus_out.empty()) std::cerr << "wrote " << records.size() << " positions to " << corpus_out << '\n';
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
