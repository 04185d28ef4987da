#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "dllab/juggling.hpp"
#include "dllab/reptheory.hpp"
#include "dllab/suites.hpp"
#include "dllab/variety.hpp"
#include "dllab/witt.hpp"
#include "json.hpp"

using namespace dllab;
using json = nlohmann::ordered_json;

namespace {

struct Config {
    uint32_t p = 2, f = 1, n = 2, h = 2, k = 1;
    uint32_t ext = 0;  // 0: use n
    uint32_t m = 1, r = 1, k2 = 0;
    uint32_t pairs = 1000, fibers = 100, thetas = 4;
    std::string regime = "equal";
    uint64_t seed = 1;
    std::string out, format, suite;
    bool no_timestamps = false, oracle = false;

    RingParams params() const {
        RingParams P;
        P.p = p;
        P.f = f;
        P.n = n;
        P.h = h;
        P.k = k;
        P.regime = parse_regime(regime);
        return P;
    }
    uint32_t ext_or_n() const { return ext ? ext : n; }
};

// Thrown for option combinations CLI11 cannot check by itself.
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

std::string utc_now() {
    std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string o = "\"";
    for (char c : s) o += c == '"' ? std::string("\"\"") : std::string(1, c);
    return o + "\"";
}

class Emitter {
public:
    Emitter(const Config& cfg, std::string command) : cfg_(cfg), command_(std::move(command)) {
        if (!cfg_.out.empty()) {
            progress_.open(cfg_.out + ".jsonl", std::ios::trunc);
            if (!progress_) throw UsageError("cannot open " + cfg_.out + ".jsonl");
        }
    }

    json config_echo() const {
        json c;
        c["p"] = cfg_.p;
        c["f"] = cfg_.f;
        c["n"] = cfg_.n;
        c["h"] = cfg_.h;
        c["k"] = cfg_.k;
        c["ext"] = cfg_.ext_or_n();
        c["regime"] = cfg_.regime;
        c["seed"] = cfg_.seed;
        return c;
    }

    void progress(const SuiteReport& r) {
        if (!progress_.is_open()) return;
        json line;
        line["event"] = "suite";
        line["suite"] = r.suite;
        line["pass"] = r.pass();
        line["checks"] = r.checks.size();
        if (!cfg_.no_timestamps) line["seconds"] = r.seconds;
        progress_ << line.dump() << "\n" << std::flush;
    }

    // Returns the process exit code.
    int report(const SuiteReport& r) {
        progress(r);
        std::string body;
        if (cfg_.format == "csv") {
            std::ostringstream os;
            os << "suite,check,status,expected,actual,witness\n";
            for (const auto& c : r.checks)
                os << csv_field(r.suite) << "," << csv_field(c.name) << "," << (c.pass ? "pass" : "fail") << ","
                   << csv_field(c.expected) << "," << csv_field(c.actual) << "," << csv_field(c.witness) << "\n";
            body = os.str();
        } else {
            json doc = header();
            doc["report"] = to_json(r, !cfg_.no_timestamps);
            body = doc.dump(2) + "\n";
        }
        write(body);
        return r.pass() ? 0 : 1;
    }

    int text(const std::string& name, const json& value, const std::string& plain) {
        if (cfg_.format == "json") {
            json doc = header();
            doc[name] = value;
            write(doc.dump(2) + "\n");
        } else {
            write(plain);
        }
        return 0;
    }

private:
    const Config& cfg_;
    std::string command_;
    std::ofstream progress_;

    json header() const {
        json doc;
        doc["schema"] = 1;
        doc["command"] = command_;
        doc["config"] = config_echo();
        if (!cfg_.no_timestamps) doc["timestamp"] = utc_now();
        return doc;
    }

    void write(const std::string& body) {
        if (progress_.is_open()) {
            json done;
            done["event"] = "done";
            progress_ << done.dump() << "\n" << std::flush;
        }
        if (cfg_.out.empty()) {
            std::cout << body;
            return;
        }
        std::ofstream o(cfg_.out, std::ios::trunc);
        if (!o) throw UsageError("cannot open " + cfg_.out);
        o << body;
    }
};

void add_point(CLI::App* s, Config& c) {
    s->add_option("--p", c.p, "residue characteristic")->capture_default_str();
    s->add_option("--f", c.f, "q = p^f")->capture_default_str();
    s->add_option("--n", c.n, "degree")->capture_default_str();
    s->add_option("--h", c.h, "level")->capture_default_str();
    s->add_option("--k", c.k, "invariant numerator")->capture_default_str();
    s->add_option("--regime", c.regime, "equal | mixed")
        ->check(CLI::IsMember({"equal", "mixed"}))
        ->capture_default_str();
    s->add_option("--seed", c.seed, "sampling seed")->capture_default_str();
}

void add_output(CLI::App* s, Config& c, bool text_default = false) {
    s->add_option("--out", c.out, "write the document here and progress to <out>.jsonl");
    s->add_option("--format", c.format, text_default ? "text | json" : "json | csv")
        ->check(CLI::IsMember(text_default ? std::vector<std::string>{"text", "json"}
                                           : std::vector<std::string>{"json", "csv"}));
    s->add_flag("--no-timestamps", c.no_timestamps, "omit timestamp and timing fields");
}

std::string poly_text(const UniversalPolys& U) {
    std::ostringstream os;
    auto names = U.var_names();
    for (uint32_t r = 0; r <= U.r_max; ++r) os << "S_" << r << " = " << U.S[r].to_string(names) << "\n";
    for (uint32_t r = 0; r <= U.r_max; ++r) os << "M_" << r << " = " << U.M[r].to_string(names) << "\n";
    return os.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite-level Deligne-Lusztig constructions for division algebras"};
    app.set_help_flag("--help", "print help");
    app.require_subcommand(1);
    Config cfg;

    auto point = [&](CLI::App* parent, const std::string& name, const std::string& help, bool text = false) {
        CLI::App* s = parent->add_subcommand(name, help);
        add_point(s, cfg);
        add_output(s, cfg, text);
        return s;
    };
    auto with_ext = [&](CLI::App* s) { s->add_option("--ext", cfg.ext, "points over F_{q^ext}; default n"); };

    auto* params = point(&app, "params", "derived parameters");

    auto* group = app.add_subcommand("group", "unit groups")->require_subcommand(1);
    auto* group_info = point(group, "info", "subgroup orders and index checks");
    with_ext(group_info);

    auto* witt = app.add_subcommand("witt", "truncated Witt vectors")->require_subcommand(1);
    auto* witt_dump = point(witt, "dump-polys", "universal sum and product polynomials", true);
    witt_dump->add_option("--r", cfg.r, "highest index")->capture_default_str();
    auto* witt_ghost = point(witt, "ghost", "ghost identities up to r");
    witt_ghost->add_option("--r", cfg.r, "highest index")->capture_default_str();
    auto* witt_ring = point(witt, "ring", "ring axioms and model agreement on random triples");
    witt_ring->add_option("--pairs", cfg.pairs)->capture_default_str();

    auto* jugg = app.add_subcommand("jugg", "juggling sequences")->require_subcommand(1);
    auto* jugg_enum = point(jugg, "enum", "enumerate sequences of weight m");
    jugg_enum->add_option("--m", cfg.m)->capture_default_str();

    auto* gr = app.add_subcommand("gr", "defining polynomials")->require_subcommand(1);
    auto* gr_print = point(gr, "print", "g_{mn} in canonical text", true);
    gr_print->add_option("--m", cfg.m)->capture_default_str();
    gr_print->add_flag("--oracle", cfg.oracle, "print c^q - c from the expanded determinant instead");
    auto* gr_verify = point(gr, "verify", "juggling polynomial against the determinant for every m < h");

    auto* variety = app.add_subcommand("variety", "the varieties X_h")->require_subcommand(1);
    auto* var_count = point(variety, "count", "points over F_{q^ext}");
    with_ext(var_count);
    auto* var_fixed = point(variety, "fixed", "zeta-fixed locus against the H-locus");
    with_ext(var_fixed);
    auto* var_verify = point(variety, "verify", "action, Lang or Lefschetz suite");
    with_ext(var_verify);
    var_verify->add_option("--suite", cfg.suite, "actions | lang | lefschetz")
        ->required()
        ->check(CLI::IsMember({"actions", "lang", "lefschetz"}));
    var_verify->add_option("--fibers", cfg.fibers, "Lang fibers to sample")->capture_default_str();

    auto* reps = app.add_subcommand("reps", "representations rho_chi")->require_subcommand(1);
    auto* reps_table = point(reps, "table", "every primitive chi");
    auto* reps_ext = point(reps, "extension", "extension to <zeta> x U and its trace normalisation");
    reps_ext->add_option("--pairs", cfg.pairs)->capture_default_str();

    auto* theta = app.add_subcommand("theta", "characters theta")->require_subcommand(1);
    auto* theta_trace = point(theta, "trace", "very regular trace identity");
    theta_trace->add_option("--thetas", cfg.thetas)->capture_default_str();

    auto* jl = app.add_subcommand("jl", "comparison across invariants")->require_subcommand(1);
    auto* jl_cmp = point(jl, "compare", "dimensions and very regular traces for k and k2");
    jl_cmp->add_option("--k2", cfg.k2)->required();
    jl_cmp->add_option("--thetas", cfg.thetas)->capture_default_str();

    auto* verify = app.add_subcommand("verify", "suite bundles")->require_subcommand(1);
    auto* verify_all_cmd = point(verify, "all", "every suite at one point");
    with_ext(verify_all_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    auto name_of = [](CLI::App* s) {
        std::string name;
        for (CLI::App* a = s; a && a->get_parent(); a = a->get_parent()) name = a->get_name() + (name.empty() ? "" : " " + name);
        return name;
    };
    CLI::App* leaf = &app;
    while (!leaf->get_subcommands().empty()) leaf = leaf->get_subcommands().front();
    const std::string command = name_of(leaf);

    try {
        RingParams P = cfg.params();
        P.validate();
        if (std::gcd(P.k, P.n) != 1)
            std::cerr << "warning: gcd(k, n) = " << std::gcd(P.k, P.n)
                      << "; the division algebra reading needs gcd(k, n) = 1\n";
        Emitter out(cfg, command);
        const uint32_t ext = cfg.ext_or_n();

        if (leaf == params) return out.report(params_report(P));
        if (leaf == group_info) return out.report(group_info_report(P, ext));
        if (leaf == witt_dump) {
            UniversalPolys U = universal_polys(cfg.r, P.p, P.f);
            json j = json::object();
            auto names = U.var_names();
            j["variables"] = names;
            for (uint32_t r = 0; r <= U.r_max; ++r) {
                j["S"].push_back(U.S[r].to_string(names));
                j["M"].push_back(U.M[r].to_string(names));
            }
            return out.text("polynomials", j, poly_text(U));
        }
        if (leaf == witt_ghost) return out.report(witt_ghost_suite({P.p}, {P.f}, cfg.r));
        if (leaf == witt_ring) return out.report(witt_ring_suite(P, cfg.pairs, cfg.seed));
        if (leaf == jugg_enum) {
            SuiteReport rep;
            rep.suite = "jugg.enum";
            auto seqs = enumerate_jugg(P, cfg.m);
            json list = json::array();
            uint64_t invalid = 0;
            for (const auto& s : seqs) {
                JuggStats st = jugg_stats(s);
                json e;
                e["j"] = s.j;
                e["sigma"] = st.sigma;
                e["sign"] = st.sign;
                e["f"] = st.f;
                e["balls"] = st.balls_string();
                e["shape"] = jugg_shape(s);
                list.push_back(std::move(e));
                invalid += !jugg_valid(s);
            }
            rep.data["m"] = cfg.m;
            rep.data["count"] = seqs.size();
            rep.data["sequences"] = std::move(list);
            rep.add("every enumerated sequence is valid", invalid == 0, "0", std::to_string(invalid));
            return out.report(rep);
        }
        if (leaf == gr_print) {
            if (P.regime != Regime::Equal) throw UsageError("gr print needs --regime equal");
            if (cfg.m == 0 || cfg.m >= P.h) throw UsageError("--m must satisfy 1 <= m < h");
            SymPoly g = cfg.oracle ? symbolic_det_c(P, cfg.m) : build_gr(P, cfg.m);
            return out.text("polynomial", g.to_string(), g.to_string() + "\n");
        }
        if (leaf == gr_verify) {
            if (P.regime != Regime::Equal) throw UsageError("gr verify needs --regime equal");
            return out.report(gr_suite(P));
        }
        if (leaf == var_count) return out.report(variety_count_report(P, ext));
        if (leaf == var_fixed) return out.report(fixed_suite(P, ext));
        if (leaf == var_verify) {
            if (cfg.suite == "actions") return out.report(actions_suite(P, ext, cfg.seed));
            if (cfg.suite == "lang") return out.report(lang_suite(P, cfg.fibers, cfg.seed));
            return out.report(lefschetz_suite(P));
        }
        if (leaf == reps_table) return out.report(rep_suite(P));
        if (leaf == reps_ext) return out.report(extension_suite(P, cfg.pairs, cfg.seed));
        if (leaf == theta_trace) return out.report(theta_suite(P, cfg.thetas));
        if (leaf == jl_cmp) return out.report(jl_compare(P, cfg.k2, cfg.thetas));
        if (leaf == verify_all_cmd)
            return out.report(verify_all(P, ext, cfg.seed, [&](const SuiteReport& r) { out.progress(r); }));
        throw UsageError("no command");
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
