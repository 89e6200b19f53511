// ubwt: build an index container from a text, then query it.
//
//   ubwt build INPUT OUTPUT [--fasta|--raw] [--bidirectional] [--sample-rate R]
//              [--csa-eps E] [--construction naive|sa|linear]
//   ubwt query INDEX count|locate PATTERN
//   ubwt query INDEX extract FROM TO
//   ubwt query INDEX maxrep|maw|plcp
//   ubwt query INDEX mum [DOC...]
//   ubwt query INDEX mem OTHER [--min-len L]
//   ubwt query INDEX ms OTHER [--tau T]
//   ubwt query INDEX ds [--tau T]
//   ubwt query INDEX kernel OTHER (--k K | --substring) [--probabilities]
//
// OTHER and DOC are raw text files or other containers.  Exit status: 0 ok,
// 1 query-domain error, 2 usage or I/O error.

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ubwt/analysis.hpp"
#include "ubwt/container.hpp"

using namespace ubwt;

namespace {

struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

u64 seed_from_env() {
    const char* s = std::getenv("UBWT_SEED");
    if (!s || !*s) return std::random_device{}() * u64(0x100000001ULL) ^ std::random_device{}();
    u64 v = 0;
    auto [p, ec] = std::from_chars(s, s + std::strlen(s), v);
    if (ec != std::errc() || *p) throw UsageError("UBWT_SEED must be an unsigned integer");
    return v;
}

// One trailing line break is not part of the text.
std::string chomp(std::string s) {
    if (!s.empty() && s.back() == '\n') s.pop_back();
    if (!s.empty() && s.back() == '\r') s.pop_back();
    return s;
}

std::string read_text_file(const std::string& path) {
    auto b = read_file(path);
    return chomp(std::string(b.begin(), b.end()));
}

bool is_container(const std::vector<uint8_t>& b) { return b.size() >= 4 && std::string(b.begin(), b.begin() + 4) == "UBWT"; }

// The raw records behind a container or a text file.
std::vector<std::string> records_of(const std::string& path) {
    auto b = read_file(path);
    if (is_container(b)) {
        StringIndex x;
        x.load(b);
        return decode_records(x.text);
    }
    return {read_text_file(path)};
}

std::string join(const std::vector<std::string>& v) {
    std::string s;
    for (auto& r : v) s += r;
    return s;
}

std::vector<uint32_t> body(const Text& t) { return {t.symbols.begin(), t.symbols.end() - 1}; }

BwtString bwt_of(const Text& t) {
    BwtString b(bwt_from_suffix_array(t), t.alphabet_size());
    b.build_range_distinct();
    return b;
}

std::vector<uint32_t> pattern_codes(const Text& t, const std::string& p, bool& absent) {
    std::array<int64_t, 256> code;
    code.fill(-1);
    for (uint32_t i = 0; i < t.raw_of.size(); ++i) code[t.raw_of[i]] = t.num_separators + i;
    std::vector<uint32_t> out;
    absent = false;
    for (unsigned char ch : p) {
        if (code[ch] < 0) absent = true;
        out.push_back(static_cast<uint32_t>(std::max<int64_t>(code[ch], 0)));
    }
    return out;
}

char raw_char(const Text& t, uint32_t c) { return t.is_separator(c) ? '$' : static_cast<char>(t.raw_of[c - t.num_separators]); }

std::string format_double(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    std::string s(buf, p);
    if (s.find_first_of(".en") == std::string::npos) s += ".0";
    return s;
}

struct BuildArgs {
    std::string input, output, construction = "sa";
    bool fasta = false, raw = false, bidirectional = false;
    size_t sample_rate = 0;
    double csa_eps = 0.5;
};

int run_build(const BuildArgs& a) {
    auto bytes = read_file(a.input);
    std::string data(bytes.begin(), bytes.end());
    Text t;
    try {
        if (a.fasta) {
            auto recs = parse_fasta(data);
            if (recs.empty()) throw UsageError("no FASTA records in " + a.input);
            t = encode_records(recs, SeparatorPolicy::PerRecord);
        } else {
            t = encode_text(chomp(std::move(data)));
        }
    } catch (const std::invalid_argument& e) {
        throw UsageError(a.input + ": " + e.what());
    }
    BuildOptions o;
    o.construction = a.construction == "naive" ? Construction::Naive
                     : a.construction == "linear" ? Construction::Linear
                                                  : Construction::SuffixArray;
    o.sample_rate = a.sample_rate;
    o.csa_eps = a.csa_eps;
    o.bidirectional = a.bidirectional;
    o.seed = seed_from_env();
    StringIndex x;
    try {
        x.build(std::move(t), o);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    write_file(a.output, x.serialize());
    return 0;
}

struct QueryArgs {
    std::string index, pattern, other;
    std::vector<std::string> docs;
    size_t from = 0, to = 0, min_len = 1, tau = 1, k = 0;
    bool substring = false, probabilities = false;
};

int run_query(const std::string& cmd, const QueryArgs& a) {
    StringIndex x;
    x.load(read_file(a.index));
    const Text& t = x.text;
    std::string out;
    auto line = [&](auto... v) {
        std::string s;
        ((s += (s.empty() ? "" : "\t") + std::to_string(v)), ...);
        out += s + "\n";
    };

    try {
        if (cmd == "count" || cmd == "locate") {
            if (a.pattern.empty()) throw DomainError("empty pattern");
            bool absent;
            auto p = pattern_codes(t, a.pattern, absent);
            Interval I = absent ? Interval{1, 0} : x.bwt.backward_search(p);
            if (cmd == "count") {
                line(I.width());
            } else {
                std::vector<size_t> pos;
                for (size_t r = I.lo; r <= I.hi && !I.empty(); ++r) pos.push_back(x.ssa.locate(r));
                std::sort(pos.begin(), pos.end());
                for (size_t q : pos) line(q);
            }
        } else if (cmd == "extract") {
            if (a.from < 1 || a.from > a.to || a.to > t.length())
                throw DomainError("range must satisfy 1 <= FROM <= TO <= " + std::to_string(t.length()));
            for (uint32_t c : x.ssa.substring(a.from, a.to)) out += raw_char(t, c);
            out += "\n";
        } else if (cmd == "maxrep") {
            for (auto& r : maximal_repeats(x.bwt)) line(r.pos, r.len);
        } else if (cmd == "maw") {
            for (auto& m : minimal_absent_words(x.bwt, t.num_separators))
                out += std::to_string(m.pos) + "\t" + std::to_string(m.len) + "\t" + raw_char(t, m.symbol) + "\n";
        } else if (cmd == "plcp") {
            for (uint32_t v : x.plcp) line(v);
        } else if (cmd == "ds") {
            if (!x.bidir) throw DomainError("index has no reverse side; rebuild with --bidirectional");
            if (a.tau < 1) throw DomainError("tau must be >= 1");
            for (uint32_t v : build_ds(*x.bidir, a.tau)) line(v);
        } else if (cmd == "mum") {
            auto docs = decode_records(t);
            for (auto& path : a.docs) {
                auto r = records_of(path);
                docs.insert(docs.end(), r.begin(), r.end());
            }
            if (docs.size() < 2) throw DomainError("MUMs need at least two documents");
            auto enc = encode_shared(docs);
            std::vector<std::vector<uint32_t>> d;
            for (auto& e : enc) d.push_back(body(e));
            for (auto& m : maximal_unique_matches(d, enc[0].alphabet_size())) line(m.id, m.doc, m.pos, m.len);
        } else if (cmd == "mem" || cmd == "ms" || cmd == "kernel") {
            auto enc = encode_shared({join(decode_records(t)), join(records_of(a.other))});
            if (cmd == "mem") {
                if (a.min_len < 1) throw DomainError("min-len must be >= 1");
                for (auto& m : maximal_exact_matches(bwt_of(enc[0]), bwt_of(enc[1]), a.min_len)) line(m.pos1, m.pos2, m.len);
            } else if (cmd == "ms") {
                if (a.tau < 1) throw DomainError("tau must be >= 1");
                MsIndex m;
                m.build(body(enc[0]), body(enc[1]), enc[0].alphabet_size(), x.seed);
                for (uint32_t v : build_ms(m, a.tau)) line(v);
            } else {
                if (a.substring == (a.k > 0)) throw DomainError("give exactly one of --k K (K >= 1) or --substring");
                auto w = a.probabilities ? KernelWeight::Probabilities : KernelWeight::Counts;
                BwtString b1 = bwt_of(enc[0]), b2 = bwt_of(enc[1]);
                double v = a.substring ? substring_kernel(b1, b2, w) : kmer_kernel(b1, b2, a.k, w);
                out += format_double(v) + "\n";
            }
        }
    } catch (const std::logic_error& e) {
        throw DomainError(e.what());
    }
    std::fwrite(out.data(), 1, out.size(), stdout);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"BWT string index: build containers and query them"};
    app.require_subcommand(1);

    BuildArgs b;
    auto* build = app.add_subcommand("build", "index a text into a container");
    build->add_option("input", b.input, "text or FASTA file")->required();
    build->add_option("output", b.output, "container path")->required();
    auto* fasta = build->add_flag("--fasta", b.fasta, "FASTA input, one separator per record");
    build->add_flag("--raw", b.raw, "raw bytes (default)")->excludes(fasta);
    build->add_flag("--bidirectional", b.bidirectional, "store the reverse side too");
    build->add_option("--sample-rate", b.sample_rate, "suffix-array sampling rate (0 = default)");
    build->add_option("--csa-eps", b.csa_eps, "CSA epsilon; 1/eps layers")->check(CLI::Range(1e-6, 1.0));
    build->add_option("--construction", b.construction, "BWT construction")
        ->check(CLI::IsMember({"naive", "sa", "linear"}));

    QueryArgs q;
    auto* query = app.add_subcommand("query", "answer a query from a container");
    query->add_option("index", q.index, "container path")->required();
    query->require_subcommand(1);
    std::string cmd;
    auto sub = [&](const char* name, const char* help) {
        auto* s = query->add_subcommand(name, help);
        s->callback([&cmd, name] { cmd = name; });
        return s;
    };
    sub("count", "occurrences of a pattern")->add_option("pattern", q.pattern)->required();
    sub("locate", "sorted positions of a pattern")->add_option("pattern", q.pattern)->required();
    auto* ex = sub("extract", "substring T[FROM..TO]");
    ex->add_option("from", q.from)->required();
    ex->add_option("to", q.to)->required();
    sub("maxrep", "maximal repeats: pos, len");
    sub("mum", "maximal unique matches: id, doc, pos, len")->add_option("docs", q.docs, "more documents");
    auto* mem = sub("mem", "maximal exact matches: pos1, pos2, len");
    mem->add_option("other", q.other)->required();
    mem->add_option("--min-len", q.min_len);
    sub("maw", "minimal absent words: pos, len, symbol");
    auto* ms = sub("ms", "matching statistics of OTHER against the index");
    ms->add_option("other", q.other)->required();
    ms->add_option("--tau", q.tau);
    sub("ds", "distinguishing statistics")->add_option("--tau", q.tau);
    sub("plcp", "permuted LCP array");
    auto* kern = sub("kernel", "cosine kernel against OTHER");
    kern->add_option("other", q.other)->required();
    kern->add_option("--k", q.k);
    kern->add_flag("--substring", q.substring);
    kern->add_flag("--probabilities", q.probabilities, "empirical-probability weights");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*build) return run_build(b);
        return run_query(cmd, q);
    } catch (const DomainError& e) {
        std::cerr << "ubwt: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "ubwt: " << e.what() << "\n";
        return 2;
    }
}
