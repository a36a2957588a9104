#pragma once

// Backend comparison harness: load a position corpus, precompute the plain
// and rotated boards once, then time repeated full passes of pseudo-legal
// move generation over the corpus for each backend.

#include <sys/utsname.h>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dlchess/direct_tables.hpp"
#include "dlchess/movegen.hpp"
#include "dlchess/position.hpp"
#include "dlchess/rotated.hpp"

namespace dlchess {

enum class ReportFormat { Text, Csv, Markdown };

inline ReportFormat parse_report_format(std::string_view s) {
    if (s == "text") return ReportFormat::Text;
    if (s == "csv") return ReportFormat::Csv;
    if (s == "markdown") return ReportFormat::Markdown;
    throw std::invalid_argument("unknown report format '" + std::string(s) + "'");
}

struct BenchConfig {
    std::string corpus_path;
    std::vector<BackendKind> backends{BackendKind::Rotated, BackendKind::Direct};
    int repetitions = 10;
    int warmup = 2;
    ReportFormat format = ReportFormat::Text;
    std::optional<std::string> tables_path;
    bool strict = false;

    void validate() const {
        if (repetitions < 1) throw std::invalid_argument("repetitions must be >= 1");
        if (warmup < 0) throw std::invalid_argument("warmup must be >= 0");
        if (backends.empty()) throw std::invalid_argument("at least one backend must be selected");
    }
};

struct BackendResult {
    BackendKind backend = BackendKind::Direct;
    double total_seconds = 0;     // sum over the timed passes
    double mean_pass_seconds = 0;
    double min_pass_seconds = 0;
    double per_position_seconds = 0;  // total / (repetitions * positions)
    std::uint64_t moves_per_pass = 0;
    std::uint64_t total_moves = 0;
    std::uint64_t generation_calls = 0;
    std::uint64_t builds_during_timing = 0;

    friend bool operator==(const BackendResult&, const BackendResult&) = default;
};

struct BenchReport {
    std::string environment;
    std::size_t positions = 0;
    int repetitions = 0;
    std::vector<BackendResult> results;

    const BackendResult* find(BackendKind k) const {
        for (const auto& r : results) {
            if (r.backend == k) return &r;
        }
        return nullptr;
    }

    /// rotated time / direct time, when both ran.
    std::optional<double> ratio() const {
        const auto* rot = find(BackendKind::Rotated);
        const auto* dir = find(BackendKind::Direct);
        if (!rot || !dir || dir->total_seconds <= 0) return std::nullopt;
        return rot->total_seconds / dir->total_seconds;
    }

    friend bool operator==(const BenchReport&, const BenchReport&) = default;
};

// ---------------------------------------------------------------------------
// Corpus

class CorpusError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parses EPD/FEN records, one per line, skipping blanks and '#' comments.
/// A malformed line is reported to `warnings` and skipped, or is fatal when
/// `strict` is set.
inline std::vector<EpdRecord> read_corpus(std::istream& in, bool strict, std::ostream& warnings) {
    std::vector<EpdRecord> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        try {
            if (auto rec = parse_epd_line(line)) out.push_back(std::move(*rec));
        } catch (const ParseError& e) {
            const std::string msg = "line " + std::to_string(lineno) + ": " + e.what();
            if (strict) throw CorpusError(msg);
            warnings << "warning: skipping " << msg << '\n';
        }
    }
    if (out.empty()) throw CorpusError("empty corpus");
    return out;
}

inline std::vector<EpdRecord> load_corpus(const std::string& path, bool strict, std::ostream& warnings) {
    std::ifstream in(path);
    if (!in) throw CorpusError("cannot read corpus '" + path + "'");
    return read_corpus(in, strict, warnings);
}

inline std::string to_epd(const EpdRecord& rec) {
    const std::string fen = serialize_fen(rec.position);
    // Board, side, castling, en passant: drop the two move counters.
    std::size_t cut = fen.size();
    for (int spaces = 0; spaces < 2; ++spaces) cut = fen.rfind(' ', cut - 1);
    std::string out = fen.substr(0, cut);
    if (rec.id) out += " id \"" + *rec.id + "\";";
    return out;
}

/// Deterministic midgame-like positions: random legal playouts from the
/// initial position, each stopped after 16..59 plies.
inline std::vector<EpdRecord> generate_corpus(std::size_t count, std::uint64_t seed, const AttackTables& tables) {
    const DirectBackend backend(tables);
    const Position start = parse_fen(kStartFen);
    std::mt19937_64 rng(seed);
    std::vector<EpdRecord> out;
    out.reserve(count);
    while (out.size() < count) {
        Position pos = start;
        const int plies = 16 + static_cast<int>(rng() % 44);
        bool finished = true;
        for (int ply = 0; ply < plies; ++ply) {
            const MoveList legal = generate_legal(pos, backend);
            if (legal.empty()) {
                finished = false;
                break;
            }
            pos = make_move(pos, legal[rng() % legal.size()]);
        }
        if (!finished || generate_legal(pos, backend).empty() || popcount(pos.occupied()) < 12) continue;
        std::ostringstream id;
        id << "gen-" << std::setw(4) << std::setfill('0') << out.size() + 1;
        out.push_back({pos, id.str()});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Benchmark

struct PrecomputedBoard {
    Position position;
    Bitboard occupied = 0;
    RotatedState rotated;
};

inline std::vector<PrecomputedBoard> precompute_boards(const std::vector<EpdRecord>& corpus, const RotationMaps& maps) {
    std::vector<PrecomputedBoard> out;
    out.reserve(corpus.size());
    for (const auto& rec : corpus) {
        const Bitboard occ = rec.position.occupied();
        out.push_back({rec.position, occ, make_rotated_state(occ, maps)});
    }
    return out;
}

inline std::string environment_string() {
    std::string env;
    if (utsname u{}; uname(&u) == 0) env = std::string(u.sysname) + " " + u.release + " " + u.machine;
    std::ifstream cpuinfo("/proc/cpuinfo");
    for (std::string line; std::getline(cpuinfo, line);) {
        if (line.rfind("model name", 0) == 0) {
            const auto colon = line.find(':');
            if (colon != std::string::npos) env += " " + line.substr(line.find_first_not_of(' ', colon + 1));
            break;
        }
    }
#if defined(__clang__)
    env += " clang " __clang_version__;
#elif defined(__GNUC__)
    env += " gcc " __VERSION__;
#endif
    return env;
}

namespace detail {

template <AttackBackend B, class StateOf>
BackendResult time_backend(const B& backend, const std::vector<PrecomputedBoard>& boards, int reps, int warmup, StateOf state_of) {
    using Clock = std::chrono::steady_clock;
    MoveList moves;
    auto pass = [&] {
        std::uint64_t generated = 0;
        for (const auto& b : boards) {
            moves.clear();
            generate_pseudo_legal(b.position, backend, state_of(b), moves);
            generated += moves.size();
        }
        return generated;
    };

    for (int i = 0; i < warmup; ++i) pass();

    BackendResult r;
    r.backend = B::kind;
    r.min_pass_seconds = std::numeric_limits<double>::infinity();
    const std::uint64_t builds_before = table_build_count().load();
    for (int i = 0; i < reps; ++i) {
        const auto t0 = Clock::now();
        const std::uint64_t generated = pass();
        const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        if (i == 0) r.moves_per_pass = generated;
        else if (generated != r.moves_per_pass) throw std::logic_error("move count changed between passes");
        r.total_moves += generated;
        r.total_seconds += secs;
        r.min_pass_seconds = std::min(r.min_pass_seconds, secs);
        r.generation_calls += boards.size();
    }
    r.builds_during_timing = table_build_count().load() - builds_before;
    r.mean_pass_seconds = r.total_seconds / reps;
    r.per_position_seconds = r.total_seconds / (static_cast<double>(reps) * static_cast<double>(boards.size()));
    return r;
}

}  // namespace detail

/// Times each configured backend over the precomputed boards. Tables must be
/// supplied for every selected backend; construction is never timed.
inline BenchReport run_bench(const BenchConfig& config, const std::vector<PrecomputedBoard>& boards,
                             const AttackTables* direct, const RotatedTables* rotated) {
    config.validate();
    if (boards.empty()) throw std::invalid_argument("empty corpus");
    for (BackendKind k : config.backends) {
        if (k == BackendKind::Direct && (!direct || direct->rank.empty() || direct->file.empty() ||
                                         direct->diag_ne.empty() || direct->diag_nw.empty())) {
            throw std::invalid_argument("direct backend selected but attack tables are missing");
        }
        if (k == BackendKind::Rotated && !rotated) {
            throw std::invalid_argument("rotated backend selected but rotated tables are missing");
        }
    }

    BenchReport report;
    report.environment = environment_string();
    report.positions = boards.size();
    report.repetitions = config.repetitions;
    for (BackendKind k : config.backends) {
        if (k == BackendKind::Direct) {
            report.results.push_back(detail::time_backend(DirectBackend(*direct), boards, config.repetitions, config.warmup,
                                                          [](const PrecomputedBoard& b) { return b.occupied; }));
        } else {
            report.results.push_back(detail::time_backend(RotatedBackend(*rotated), boards, config.repetitions,
                                                          config.warmup,
                                                          [](const PrecomputedBoard& b) { return b.rotated; }));
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// Reports

namespace detail {

inline std::string shortest(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, p);
}

inline std::string fixed(double v, int decimals) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(decimals) << v;
    return os.str();
}

inline std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

inline std::vector<std::string> csv_split(std::string_view line) {
    std::vector<std::string> fields(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                fields.back() += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                fields.back() += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.emplace_back();
        } else {
            fields.back() += c;
        }
    }
    return fields;
}

template <class T>
T parse_number(const std::string& s) {
    T v{};
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size()) throw std::invalid_argument("bad numeric field '" + s + "'");
    return v;
}

inline std::string moves_cell(const BenchReport& r) {
    const auto* rot = r.find(BackendKind::Rotated);
    const auto* dir = r.find(BackendKind::Direct);
    if (rot && dir && rot->moves_per_pass != dir->moves_per_pass) {
        return "rotated " + std::to_string(rot->moves_per_pass) + " / direct " + std::to_string(dir->moves_per_pass);
    }
    return std::to_string(r.results.front().moves_per_pass);
}

}  // namespace detail

inline constexpr std::string_view kCsvHeader =
    "environment,positions,repetitions,backend,total_seconds,mean_pass_seconds,min_pass_seconds,"
    "per_position_seconds,moves_per_pass,total_moves,generation_calls";

inline std::string emit_report(const BenchReport& r, ReportFormat format) {
    std::ostringstream os;
    const auto* rot = r.find(BackendKind::Rotated);
    const auto* dir = r.find(BackendKind::Direct);
    const auto ratio = r.ratio();

    switch (format) {
        case ReportFormat::Csv:
            os << kCsvHeader << '\n';
            for (const auto& b : r.results) {
                os << detail::csv_quote(r.environment) << ',' << r.positions << ',' << r.repetitions << ','
                   << backend_name(b.backend) << ',' << detail::shortest(b.total_seconds) << ','
                   << detail::shortest(b.mean_pass_seconds) << ',' << detail::shortest(b.min_pass_seconds) << ','
                   << detail::shortest(b.per_position_seconds) << ',' << b.moves_per_pass << ',' << b.total_moves << ','
                   << b.generation_calls << '\n';
            }
            break;

        case ReportFormat::Markdown: {
            os << "| OS and CPU |";
            if (rot) os << " Rotated Bitboards Time (s) |";
            if (dir) os << " Direct Lookup Time (s) |";
            if (ratio) os << " Ratio (rotated/direct) |";
            os << " Positions | Repetitions | Moves per pass |\n|---|";
            for (int i = 0; i < (rot != nullptr) + (dir != nullptr) + (ratio.has_value()) + 3; ++i) os << "---|";
            os << "\n| " << r.environment << " |";
            if (rot) os << ' ' << detail::fixed(rot->total_seconds, 4) << " |";
            if (dir) os << ' ' << detail::fixed(dir->total_seconds, 4) << " |";
            if (ratio) os << ' ' << detail::fixed(*ratio, 3) << " |";
            os << ' ' << r.positions << " | " << r.repetitions << " | " << detail::moves_cell(r) << " |\n";
            break;
        }

        case ReportFormat::Text:
            os << "environment: " << r.environment << '\n'
               << "positions:   " << r.positions << '\n'
               << "repetitions: " << r.repetitions << '\n';
            os << std::left << std::setw(9) << "backend" << std::right << std::setw(14) << "total (s)" << std::setw(16)
               << "mean/pass (s)" << std::setw(15) << "min/pass (s)" << std::setw(16) << "moves/pass" << '\n';
            for (const auto& b : r.results) {
                os << std::left << std::setw(9) << backend_name(b.backend) << std::right << std::setw(14)
                   << detail::fixed(b.total_seconds, 4) << std::setw(16) << detail::fixed(b.mean_pass_seconds, 5)
                   << std::setw(15) << detail::fixed(b.min_pass_seconds, 5) << std::setw(16) << b.moves_per_pass << '\n';
            }
            if (ratio) {
                os << "ratio rotated/direct: " << detail::fixed(*ratio, 3)
                   << " (interpreted-language reference: 1.10-1.15)\n";
            }
            break;
    }
    return os.str();
}

/// Inverse of emit_report(..., ReportFormat::Csv).
inline BenchReport parse_csv_report(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) throw std::invalid_argument("missing or unexpected CSV header");
    BenchReport r;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = detail::csv_split(line);
        if (f.size() != 11) throw std::invalid_argument("CSV row has " + std::to_string(f.size()) + " fields");
        r.environment = f[0];
        r.positions = detail::parse_number<std::size_t>(f[1]);
        r.repetitions = detail::parse_number<int>(f[2]);
        BackendResult b;
        b.backend = parse_backend(f[3]);
        b.total_seconds = detail::parse_number<double>(f[4]);
        b.mean_pass_seconds = detail::parse_number<double>(f[5]);
        b.min_pass_seconds = detail::parse_number<double>(f[6]);
        b.per_position_seconds = detail::parse_number<double>(f[7]);
        b.moves_per_pass = detail::parse_number<std::uint64_t>(f[8]);
        b.total_moves = detail::parse_number<std::uint64_t>(f[9]);
        b.generation_calls = detail::parse_number<std::uint64_t>(f[10]);
        r.results.push_back(b);
    }
    return r;
}

}  // namespace dlchess
