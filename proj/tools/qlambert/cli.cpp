#include "cli.hpp"

#include <cstdlib>
#include <map>
#include <optional>
#include <ostream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qlambert/catalog.hpp"
#include "qlambert/numbertheory.hpp"
#include "qlambert/transform_group.hpp"
#include "qlambert/verifier.hpp"

namespace qlambert::cli {

namespace {

struct Config {
    std::optional<std::size_t> degree;
    std::size_t trials = 5;
    std::uint64_t seed = 0;
    std::string format = "text";
    std::string catalog_path;
    std::vector<std::string> binds;
    std::vector<std::string> ids;
    bool all = false;
    bool timing = false;
    unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
    std::string expr;
    unsigned sigma_k = 1;
    std::int64_t sigma_max = 20;
};

class UsageError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::map<std::string, Param<Rational>> parse_binds(const std::vector<std::string>& binds)
{
    std::map<std::string, Param<Rational>> out;
    for (const auto& b : binds) {
        const auto eq = b.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw UsageError("--bind expects name=c/r[,e], got '" + b + "'");
        }
        std::string name = b.substr(0, eq);
        if (name.front() == '$') {
            name.erase(0, 1);
        }
        try {
            out[name] = parse_param(b.substr(eq + 1));
        } catch (const std::exception& e) {
            throw UsageError("--bind " + b + ": " + e.what());
        }
    }
    return out;
}

std::vector<IdentityRecord> load(const Config& cfg)
{
    std::string path = cfg.catalog_path;
    if (path.empty()) {
        if (const char* env = std::getenv("QLAMBERT_CATALOG"); env && *env) {
            path = env;
        }
    }
    try {
        return path.empty() ? builtin_catalog() : load_catalog(path);
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
}

int cmd_expand(const Config& cfg, std::ostream& out)
{
    const std::size_t degree = cfg.degree.value_or(60);
    const auto bindings = parse_binds(cfg.binds);
    Bindings b(bindings.begin(), bindings.end());
    const auto expr = parse(cfg.expr);
    for (const auto& name : referenced_params(*expr)) {
        if (!b.contains(name)) {
            throw EvalError("parameter $" + name + " is not bound (use --bind " + name + "=c/r[,e])");
        }
    }
    const Series s = evaluate(expr, degree, b);
    if (cfg.format == "json") {
        nlohmann::ordered_json j;
        j["expr"] = print(*expr);
        j["degree"] = degree;
        auto& co = j["coefficients"] = nlohmann::ordered_json::array();
        for (std::size_t k = 0; k <= degree; ++k) {
            co.push_back(s[k].str());
        }
        out << j.dump(2) << '\n';
    } else if (cfg.format == "csv") {
        out << "k,coefficient\n";
        for (std::size_t k = 0; k <= degree; ++k) {
            out << k << ',' << s[k].str() << '\n';
        }
    } else {
        for (std::size_t k = 0; k <= degree; ++k) {
            out << (k ? ", " : "") << s[k].str();
        }
        out << '\n';
    }
    return kOk;
}

int cmd_verify(const Config& cfg, std::ostream& out)
{
    if (cfg.all == !cfg.ids.empty()) {
        throw UsageError("verify needs exactly one of --id or --all");
    }
    if (cfg.trials < 1 || (cfg.degree && *cfg.degree < 1)) {
        throw UsageError("--degree and --trials must be >= 1");
    }
    auto records = load(cfg);
    if (!cfg.all) {
        std::vector<IdentityRecord> chosen;
        for (const auto& id : cfg.ids) {
            const auto* r = find_record(records, id);
            if (!r) {
                throw UsageError("no identity with id '" + id + "'");
            }
            chosen.push_back(*r);
        }
        records = std::move(chosen);
    }
    for (const auto& [name, p] : parse_binds(cfg.binds)) {
        bool found = false;
        for (auto& r : records) {
            for (auto& spec : r.params) {
                if (spec.name == name) {
                    spec.fixed = p.c;
                    spec.exponent = p.e;
                    found = true;
                }
            }
        }
        if (!found) {
            throw UsageError("--bind " + name + ": no selected identity has this parameter");
        }
    }
    VerifyOptions opts;
    opts.degree = cfg.degree;
    opts.trials = cfg.trials;
    opts.seed = cfg.seed;
    opts.jobs = cfg.jobs;
    const auto reports = verify_all(records, opts);
    if (cfg.format == "json") {
        out << to_json(reports, cfg.timing);
    } else if (cfg.format == "csv") {
        out << to_csv(reports);
    } else {
        out << to_text(reports, cfg.timing);
    }
    const bool ok = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.pass; });
    return ok ? kOk : kIdentityFailure;
}

int cmd_group(std::ostream& out)
{
    using namespace group;
    const auto elems = closure();
    out << "order: " << elems.size() << '\n';
    for (std::size_t i = 0; i < elems.size(); ++i) {
        const auto& e = elems[i];
        out << (i < 10 ? " " : "") << i << "  " << (e.word.empty() ? "I" : e.word) << " (length "
            << e.word.size() << ")  " << e.matrix.str() << '\n';
    }
    const auto id = Monomial4::identity();
    const auto s = generator(Generator::S);
    const auto t = generator(Generator::T);
    auto check = [&](const char* label, bool ok) {
        out << label << ": " << (ok ? "ok" : "FAILED") << '\n';
        return ok;
    };
    const auto st = s * t;
    Monomial4 p = id;
    for (int i = 0; i < 12; ++i) {
        p = p * st;
    }
    bool ok = check("S^2 = I", s * s == id);
    ok = check("T^2 = I", t * t == id) && ok;
    ok = check("(ST)^12 = I", p == id) && ok;
    out << "order of ST: " << order(st) << '\n';
    return ok && elems.size() == 24 ? kOk : kIdentityFailure;
}

int cmd_sigma(const Config& cfg, std::ostream& out)
{
    if (cfg.sigma_max < 1) {
        throw UsageError("--max must be >= 1");
    }
    out << "n,sigma_" << cfg.sigma_k << "(n)\n";
    for (std::int64_t n = 1; n <= cfg.sigma_max; ++n) {
        out << n << ',' << nt::sigma(cfg.sigma_k, n).get_str() << '\n';
    }
    return kOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Config cfg;
    CLI::App app{"Exact truncated q-series engine for double Lambert series identities", "qlambert"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--degree,-d", cfg.degree, "truncation degree (expand: 60; verify: per record)")
            ->check(CLI::PositiveNumber);
        sub->add_option("--format,-f", cfg.format, "output format")
            ->check(CLI::IsMember({"text", "json", "csv"}));
        sub->add_option("--bind,-b", cfg.binds, "parameter binding name=c/r[,e]");
    };

    auto* expand = app.add_subcommand("expand", "print the coefficients of an expression");
    expand->add_option("expr", cfg.expr, "expression")->required();
    add_common(expand);

    auto* verify = app.add_subcommand("verify", "verify catalog identities");
    add_common(verify);
    verify->add_option("--trials,-t", cfg.trials, "random parameter draws per identity");
    verify->add_option("--seed,-s", cfg.seed, "sampling seed");
    verify->add_option("--catalog", cfg.catalog_path, "catalog file (default: $QLAMBERT_CATALOG, then built-in)");
    verify->add_option("--id", cfg.ids, "identity id (repeatable)");
    verify->add_flag("--all", cfg.all, "verify every identity");
    verify->add_flag("--timing", cfg.timing, "include wall-clock times");
    verify->add_option("--jobs,-j", cfg.jobs, "worker threads")->check(CLI::PositiveNumber);

    auto* list = app.add_subcommand("list", "list catalog identities");
    list->add_option("--catalog", cfg.catalog_path, "catalog file");

    auto* grp = app.add_subcommand("group", "list the group generated by S and T");

    auto* sigma = app.add_subcommand("sigma", "table of sigma_k(n)");
    sigma->add_option("-k,--k", cfg.sigma_k, "power k");
    sigma->add_option("--max,-n", cfg.sigma_max, "largest n");

    std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (expand->parsed()) {
            return cmd_expand(cfg, out);
        }
        if (verify->parsed()) {
            return cmd_verify(cfg, out);
        }
        if (list->parsed()) {
            for (const auto& r : load(cfg)) {
                out << r.id << "  " << r.citation << '\n';
            }
            return kOk;
        }
        if (grp->parsed()) {
            return cmd_group(out);
        }
        if (sigma->parsed()) {
            return cmd_sigma(cfg, out);
        }
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kUsage;
    } catch (const EvalError& e) {
        err << "evaluation error: " << e.what() << '\n';
        return kUsage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

} // namespace qlambert::cli
