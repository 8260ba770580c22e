#include "sumfree/cli.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "sumfree/cache.hpp"
#include "sumfree/certifier.hpp"
#include "sumfree/continuous_search.hpp"
#include "sumfree/discrete.hpp"
#include "sumfree/interval_set.hpp"

namespace sumfree::cli {

namespace {

using cache::json;

#ifndef SUMFREE_VERSION
#define SUMFREE_VERSION "dev"
#endif

std::string paren_decimal(const std::string& rational_text) {
    return "(" + Rational::parse(rational_text).to_decimal(6) + ")";
}

// ---- continuous ------------------------------------------------------------

json continuous_json(long k, std::size_t m, const continuous::SearchResult& r) {
    json witnesses = json::array();
    for (const auto& w : r.witnesses) witnesses.push_back(w.set.to_string());
    return {{"k", k},
            {"m", m},
            {"optimum", r.optimum.to_string()},
            {"witnesses", witnesses},
            {"nodes_explored", r.nodes_explored},
            {"status", continuous::to_string(r.status)}};
}

void render_continuous(const json& r, bool as_json, std::ostream& out) {
    if (as_json) {
        out << r.dump(2) << '\n';
        return;
    }
    const std::string opt = r.at("optimum").get<std::string>();
    out << "k=" << r.at("k").get<long>() << " m=" << r.at("m").get<long>() << ": optimum " << opt << ' '
        << paren_decimal(opt) << ", status " << r.at("status").get<std::string>() << ", nodes "
        << r.at("nodes_explored").get<std::size_t>() << '\n';
    for (const auto& w : r.at("witnesses")) out << "  witness " << w.get<std::string>() << '\n';
}

// ---- discrete --------------------------------------------------------------

json set_json(const discrete::Set& s) { return json(s); }

void render_discrete(const json& r, bool as_json, bool show_sets, std::ostream& out) {
    json shown = r;
    if (!show_sets) shown.erase("witnesses");
    if (as_json) {
        out << shown.dump(2) << '\n';
        return;
    }
    out << "f(" << r.at("n").get<long>() << "," << r.at("k").get<long>() << ") = " << r.at("f").get<long>() << '\n';
    if (r.contains("count")) out << "maximum sets: " << r.at("count").get<std::size_t>() << '\n';
    if (show_sets && r.contains("witnesses")) {
        for (const auto& s : r.at("witnesses")) {
            out << "  {";
            bool first = true;
            for (const auto& x : s) {
                out << (first ? "" : ",") << x.get<long>();
                first = false;
            }
            out << "}\n";
        }
    }
}

// ---- certify ---------------------------------------------------------------

json certificate_json(const certify::Certificate& cert, const certify::HarnessReport& h) {
    json branches = json::array();
    for (const auto& b : cert.branches) {
        json terms = json::array();
        for (const auto& t : b.terms) terms.push_back({{"label", t.label}, {"bound", t.bound.to_string()}});
        branches.push_back({{"name", certify::to_string(b.name)},
                            {"terms", terms},
                            {"total", b.total.to_string()},
                            {"displayed", b.displayed.to_string()},
                            {"delta_sup", b.delta_sup.to_string()}});
    }
    json steps = json::array();
    for (const auto& s : cert.steps)
        steps.push_back({{"name", s.name},
                         {"kind", certify::to_string(s.kind)},
                         {"lhs", s.lhs.to_string()},
                         {"relation", s.relation},
                         {"rhs", s.rhs.to_string()},
                         {"holds", s.holds}});
    json harness = {{"trials", h.trials},
                    {"max_intervals", h.max_intervals},
                    {"seed", h.seed},
                    {"violations", h.violations},
                    {"zero_slack", h.zero_slack},
                    {"min_slack", h.min_slack.to_string()},
                    {"min_slack_set", h.min_slack_set.to_string()}};
    if (h.first_violation) harness["first_violation"] = h.first_violation->to_string();
    return {{"delta_star", cert.delta_star.to_string()},
            {"consistent", cert.all_pass()},
            {"branches", branches},
            {"steps", steps},
            {"harness", harness}};
}

bool certificate_ok(const json& c) {
    return c.at("consistent").get<bool>() && c.at("harness").at("violations").get<std::size_t>() == 0;
}

void render_certify(const json& c, bool as_json, std::ostream& out) {
    if (as_json) {
        out << c.dump(2) << '\n';
        return;
    }
    out << "branch     total                     delta_sup\n";
    for (const auto& b : c.at("branches")) {
        std::string name = b.at("name").get<std::string>();
        std::string total = b.at("total").get<std::string>();
        name.resize(std::max<std::size_t>(name.size(), 10), ' ');
        total.resize(std::max<std::size_t>(total.size(), 25), ' ');
        const std::string sup = b.at("delta_sup").get<std::string>();
        out << name << ' ' << total << ' ' << sup << ' ' << paren_decimal(sup) << '\n';
    }
    const std::string star = c.at("delta_star").get<std::string>();
    out << "delta* = " << star << ' ' << paren_decimal(star) << '\n';
    out << "\nsteps:\n";
    for (const auto& s : c.at("steps")) {
        const bool holds = s.at("holds").get<bool>();
        out << "  [" << (holds ? "holds" : "fails") << "] (" << s.at("kind").get<std::string>() << ") "
            << s.at("name").get<std::string>() << ": " << s.at("lhs").get<std::string>() << ' '
            << s.at("relation").get<std::string>() << ' ' << s.at("rhs").get<std::string>() << '\n';
    }
    const json& h = c.at("harness");
    out << "\nsumset bound harness: " << h.at("trials").get<std::size_t>() << " trials (<= "
        << h.at("max_intervals").get<std::size_t>() << " intervals, seed " << h.at("seed").get<std::uint64_t>()
        << "), violations " << h.at("violations").get<std::size_t>() << ", zero-slack cases "
        << h.at("zero_slack").get<std::size_t>() << ", min slack " << h.at("min_slack").get<std::string>() << '\n';
    out << "chain consistent: " << (c.at("consistent").get<bool>() ? "yes" : "no") << '\n';
}

// ---- report ----------------------------------------------------------------

std::string continuous_claim(long k, long m) {
    if (k == 3) return "<= 77/177";
    if (k == 1) return "1/2";
    if (k >= 4 && m >= 3) return continuous::mu_formula(k).to_string();
    return "-";
}

std::string claim_check(long k, long m, const std::string& optimum) {
    const Rational opt = Rational::parse(optimum);
    if (k == 3) {
        if (opt > make_rational(77, 177)) return "VIOLATED";
        return m >= 3 ? (opt == make_rational(77, 177) ? "equal" : "below") : "below";
    }
    if (k == 1) return opt == make_rational(1, 2) ? "equal" : "differs";
    if (k >= 4 && m >= 3) return opt == continuous::mu_formula(k) ? "equal" : "differs";
    return "-";
}

void render_report(const std::vector<cache::CacheRecord>& records, std::ostream& out) {
    out << "# sumfree results\n\n";
    out << "## Continuous: max measure of a k-sum-free union of <= m intervals\n\n";
    out << "| k | m | all optima | optimum | decimal | witnesses | status | reference | check |\n";
    out << "|---|---|---|---|---|---|---|---|---|\n";
    for (const auto& rec : records) {
        if (rec.kind != "continuous") continue;
        const json& r = rec.result;
        const long k = r.at("k").get<long>(), m = r.at("m").get<long>();
        const std::string opt = r.at("optimum").get<std::string>();
        std::string ws;
        for (const auto& w : r.at("witnesses")) ws += (ws.empty() ? "" : "<br>") + w.get<std::string>();
        out << "| " << k << " | " << m << " | " << (rec.params.value("all_optima", false) ? "yes" : "no") << " | "
            << opt << " | " << Rational::parse(opt).to_decimal(6) << " | " << ws << " | "
            << r.at("status").get<std::string>() << " | " << continuous_claim(k, m) << " | "
            << claim_check(k, m, opt) << " |\n";
    }
    out << "\n## Discrete: f(n,k)\n\n";
    out << "| n | k | f(n,k) | ceil(n/2) | maximum sets |\n";
    out << "|---|---|---|---|---|\n";
    for (const auto& rec : records) {
        if (rec.kind != "discrete") continue;
        const json& r = rec.result;
        const long n = r.at("n").get<long>();
        out << "| " << n << " | " << r.at("k").get<long>() << " | " << r.at("f").get<long>() << " | " << (n + 1) / 2
            << " | " << (r.contains("count") ? std::to_string(r.at("count").get<std::size_t>()) : std::string("-"))
            << " |\n";
    }
    out << "\n## Certificate\n\n";
    out << "| trials | max intervals | seed | delta* | A2Empty | Gap | Overlap | sumset violations | consistent |\n";
    out << "|---|---|---|---|---|---|---|---|---|\n";
    for (const auto& rec : records) {
        if (rec.kind != "certify") continue;
        const json& c = rec.result;
        const json& h = c.at("harness");
        out << "| " << h.at("trials").get<std::size_t>() << " | " << h.at("max_intervals").get<std::size_t>() << " | "
            << h.at("seed").get<std::uint64_t>() << " | " << c.at("delta_star").get<std::string>();
        for (const auto& b : c.at("branches")) out << " | " << b.at("delta_sup").get<std::string>();
        out << " | " << h.at("violations").get<std::size_t>() << " | "
            << (c.at("consistent").get<bool>() ? "yes" : "no") << " |\n";
    }
}

// ---- plumbing --------------------------------------------------------------

struct Cached {
    json result;
    bool hit;
};

template <class Compute>
Cached cached_run(const cache::Cache& store, const std::string& kind, const json& params, bool force,
                  Compute&& compute) {
    if (!force) {
        if (auto rec = store.find(kind, params)) return {rec->result, true};
    }
    cache::CacheRecord rec;
    rec.kind = kind;
    rec.params = params;
    rec.result = compute();
    rec.version = SUMFREE_VERSION;
    rec.timestamp = cache::now_timestamp();
    store.append(rec);
    return {rec.result, false};
}

void print_parse_error(std::ostream& err, const ParseError& e, const std::string& text) {
    err << "error: " << e.what() << '\n' << "  " << text << '\n' << "  " << std::string(e.position(), ' ') << "^\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact search and verification for k-sum-free sets", "sumfree"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string format;
    std::string cache_path = cache::default_path();
    bool force = false;
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "table"}));
    app.add_option("--cache", cache_path, "Cache file (default $SUMFREE_CACHE or ./sumfree-cache.jsonl)");
    app.add_flag("--force", force, "Recompute even when a cached result exists");

    long vk = 0;
    std::string set_text;
    auto* verify = app.add_subcommand("verify", "Measure and k-sum-freeness of an interval union");
    verify->add_option("--k", vk, "k in x + y = kz")->required()->check(CLI::PositiveNumber);
    verify->add_option("--set", set_text, "Intervals, e.g. \"(8/177,4/59);(2/3,1)\"")->required();

    long ck = 0;
    std::size_t cm = 0, c_node_limit = 0;
    unsigned c_parallel = 1;
    bool all_optima = false, verbose = false;
    auto* cont = app.add_subcommand("continuous", "Maximize measure over unions of <= m intervals");
    cont->add_option("--k", ck)->required()->check(CLI::PositiveNumber);
    cont->add_option("--m", cm)->required()->check(CLI::PositiveNumber);
    cont->add_flag("--all-optima", all_optima, "Enumerate every optimal set");
    cont->add_option("--parallel", c_parallel, "Worker threads")->check(CLI::PositiveNumber);
    auto* limit_opt = cont->add_option("--node-limit", c_node_limit, "Stop after this many nodes");
    cont->add_flag("-v,--verbose", verbose, "Dump LP tableaux to stderr (sequential only)");

    long dn = 0, dk = 0;
    std::size_t d_node_limit = 0;
    bool enumerate = false, witness = false;
    auto* disc = app.add_subcommand("discrete", "f(n,k) for subsets of {1..n}");
    disc->add_option("--n", dn)->required()->check(CLI::Range(1L, discrete::kMaxN));
    disc->add_option("--k", dk)->required()->check(CLI::PositiveNumber);
    disc->add_flag("--enumerate", enumerate, "List every maximum set");
    disc->add_flag("--witness", witness, "Print a maximum set");
    auto* d_limit_opt = disc->add_option("--node-limit", d_node_limit, "Enumeration node budget");

    std::size_t trials = 10000, max_intervals = 6;
    std::uint64_t seed = 1;
    std::string cert_out;
    auto* cert = app.add_subcommand("certify", "Re-derive delta and run the sumset bound harness");
    cert->add_option("--trials", trials)->check(CLI::PositiveNumber);
    cert->add_option("--max-intervals", max_intervals)->check(CLI::PositiveNumber);
    cert->add_option("--seed", seed);
    cert->add_option("--out", cert_out, "Also write the JSON certificate here");

    auto* report = app.add_subcommand("report", "Markdown summary of cached results");

    std::vector<std::string> argv_store{"sumfree"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_store) argv.push_back(a.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsageError;
    }

    const cache::Cache store(cache_path, &err);
    try {
        if (*verify) {
            IntervalUnion u;
            try {
                u = IntervalUnion::parse(set_text);
            } catch (const ParseError& e) {
                print_parse_error(err, e, set_text);
                return kUsageError;
            }
            const SumFreeVerdict v = is_k_sum_free(u, vk);
            if (format == "json") {
                json j = {{"set", u.to_string()}, {"k", vk}, {"measure", u.measure().to_string()}, {"sum_free", v.sum_free}};
                if (v.witness)
                    j["witness"] = {{"x", v.witness->x.to_string()}, {"y", v.witness->y.to_string()}, {"z", v.witness->z.to_string()}};
                out << j.dump(2) << '\n';
            } else {
                out << "measure " << u.measure().to_string() << "; " << vk << "-sum-free: " << (v.sum_free ? "yes" : "no");
                if (v.witness)
                    out << "; witness x=" << v.witness->x << " y=" << v.witness->y << " z=" << v.witness->z;
                out << '\n';
            }
            return v.sum_free ? kOk : kVerificationFailed;
        }

        if (*cont) {
            json params = {{"k", ck}, {"m", cm}, {"all_optima", all_optima}};
            if (limit_opt->count()) params["node_limit"] = c_node_limit;
            auto res = cached_run(store, "continuous", params, force || verbose, [&] {
                continuous::SearchOptions opts;
                opts.all_optima = all_optima;
                opts.workers = c_parallel;
                if (limit_opt->count()) opts.node_limit = c_node_limit;
                if (verbose) opts.lp_trace = &err;
                return continuous_json(ck, cm, continuous::maximize_measure(cm, ck, opts));
            });
            if (res.hit) err << "(served from cache " << store.path() << ")\n";
            render_continuous(res.result, format != "table", out);
            return kOk;
        }

        if (*disc) {
            json params = {{"n", dn}, {"k", dk}, {"enumerate", enumerate}};
            if (d_limit_opt->count()) params["node_limit"] = d_node_limit;
            auto res = cached_run(store, "discrete", params, force, [&] {
                const discrete::DiscreteInstance inst{dn, dk};
                json j = {{"n", dn}, {"k", dk}};
                if (enumerate) {
                    std::optional<std::size_t> limit;
                    if (d_limit_opt->count()) limit = d_node_limit;
                    const auto sets = discrete::enumerate_maximum_sets(inst, limit);
                    j["f"] = sets.empty() ? 0 : sets.front().size();
                    j["count"] = sets.size();
                    json ws = json::array();
                    for (const auto& s : sets) ws.push_back(set_json(s));
                    j["witnesses"] = ws;
                } else {
                    const auto best = discrete::f_max(inst);
                    j["f"] = best.value;
                    j["witnesses"] = json::array({set_json(best.witness)});
                }
                return j;
            });
            if (res.hit) err << "(served from cache " << store.path() << ")\n";
            render_discrete(res.result, format != "table", witness || enumerate, out);
            return kOk;
        }

        if (*cert) {
            json params = {{"trials", trials}, {"max_intervals", max_intervals}, {"seed", seed}};
            auto res = cached_run(store, "certify", params, force, [&] {
                return certificate_json(certify::derive_delta(), certify::sumset_bound_harness(trials, max_intervals, seed));
            });
            if (res.hit) err << "(served from cache " << store.path() << ")\n";
            render_certify(res.result, format == "json", out);
            if (!cert_out.empty()) {
                std::ofstream f(cert_out);
                if (!f) throw Error("cannot write " + cert_out);
                f << res.result.dump(2) << '\n';
            }
            return certificate_ok(res.result) ? kOk : kVerificationFailed;
        }

        if (*report) {
            render_report(store.load(), out);
            return kOk;
        }
    } catch (const discrete::NodeLimitExceeded& e) {
        err << "error: " << e.what() << "; " << e.partial().size() << " maximum sets found before stopping\n";
        return kVerificationFailed;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kVerificationFailed;
    }
    return kUsageError;
}

}  // namespace sumfree::cli
