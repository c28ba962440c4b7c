#include "qlambert/verifier.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "qlambert/numbertheory.hpp"

namespace qlambert {

namespace {

std::int64_t eval_integer(const ExprPtr& e, const Bindings& b)
{
    const auto s = evaluate(e, 0, b);
    if (!s[0].is_integer()) {
        throw EvalError("stride must be an integer");
    }
    return s[0].to_int64();
}

Rational subseq_target(const SubseqTarget& t, std::int64_t n, const Bindings& b)
{
    if (t.kind == SubseqTarget::Kind::Sigma) {
        return Rational(nt::sigma(t.sigma_k, n));
    }
    const auto& p = b.at(t.param);
    if (p.e != 0) {
        throw EvalError("wdivsum target needs $" + t.param + " with exponent 0");
    }
    return nt::weighted_divisor_sum(n, p.c);
}

/// Cartesian product of the integer families, in declaration order.
std::vector<std::vector<std::int64_t>> int_grid(const IdentityRecord& r)
{
    std::vector<std::vector<std::int64_t>> grid{{}};
    for (const auto& ip : r.int_params) {
        std::vector<std::vector<std::int64_t>> next;
        for (const auto& row : grid) {
            for (std::int64_t v = ip.lo; v <= ip.hi; ++v) {
                auto r2 = row;
                r2.push_back(v);
                next.push_back(std::move(r2));
            }
        }
        grid = std::move(next);
    }
    return grid;
}

} // namespace

std::optional<Mismatch> compare(const IdentityRecord& record, const Series& lhs, const Series* rhs,
                                const Bindings& bindings)
{
    const std::size_t d = rhs ? std::min(lhs.degree(), rhs->degree()) : lhs.degree();
    const Rational zero;
    auto r_at = [&](std::size_t k) -> const Rational& { return rhs ? (*rhs)[k] : zero; };
    switch (record.mode.kind) {
    case ModeKind::Equal:
        for (std::size_t k = 0; k <= d; ++k) {
            if (lhs[k] != r_at(k)) {
                return Mismatch{k, lhs[k], r_at(k)};
            }
        }
        return std::nullopt;
    case ModeKind::OddFunction:
        for (std::size_t k = 0; k <= d; k += 2) {
            if (lhs[k] != r_at(k)) {
                return Mismatch{k, lhs[k], r_at(k)};
            }
        }
        return std::nullopt;
    case ModeKind::EvenCoeffEqual:
        for (std::size_t k = 0; k <= d; k += 2) {
            if (lhs[k] != r_at(k)) {
                return Mismatch{k, lhs[k], r_at(k)};
            }
        }
        return std::nullopt;
    case ModeKind::SubseqEquals: {
        const std::int64_t s = eval_integer(record.mode.stride, bindings);
        if (s < 1) {
            throw EvalError("stride must be >= 1");
        }
        for (std::int64_t n = 1; static_cast<std::size_t>(s * n) <= d; ++n) {
            const auto k = static_cast<std::size_t>(s * n);
            const Rational want = subseq_target(record.mode.target, n, bindings);
            if (lhs[k] != want) {
                return Mismatch{k, lhs[k], want};
            }
        }
        return std::nullopt;
    }
    }
    return std::nullopt;
}

RecordReport verify(const IdentityRecord& record, const VerifyOptions& opts)
{
    const auto start = std::chrono::steady_clock::now();
    RecordReport rep;
    rep.id = record.id;
    rep.degree = opts.degree.value_or(record.default_degree);
    rep.seed = opts.seed;
    rep.trials = record.params.empty() ? 1 : opts.trials;

    const auto grid = int_grid(record);
    for (std::size_t t = 0; t < rep.trials; ++t) {
        Bindings base;
        std::map<std::string, std::string> shown;
        try {
            base = sample_params(record, opts.seed, t);
        } catch (const SamplingError& e) {
            rep.failures.push_back({t, {}, std::nullopt, "", "", e.what()});
            continue;
        }
        for (const auto& [name, p] : base) {
            shown[name] = format_param(p);
        }
        for (const auto& row : grid) {
            Bindings b = base;
            auto labels = shown;
            for (std::size_t i = 0; i < row.size(); ++i) {
                b[record.int_params[i].name] = Param<Rational>{Rational(row[i]), 0};
                labels[record.int_params[i].name] = std::to_string(row[i]);
            }
            try {
                const Series l = evaluate(record.lhs, rep.degree, b);
                std::optional<Series> r;
                if (record.rhs) {
                    r = evaluate(record.rhs, rep.degree, b);
                }
                if (auto m = compare(record, l, r ? &*r : nullptr, b)) {
                    rep.failures.push_back({t, labels, m->k, m->lhs.str(), m->rhs.str(), ""});
                }
            } catch (const std::exception& e) {
                rep.failures.push_back({t, labels, std::nullopt, "", "", e.what()});
            }
        }
    }
    rep.pass = rep.failures.empty();
    rep.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

std::vector<RecordReport> verify_all(const std::vector<IdentityRecord>& records, const VerifyOptions& opts)
{
    std::vector<RecordReport> out(records.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < records.size();) {
            out[i] = verify(records[i], opts);
        }
    };
    const unsigned n = std::max(1u, std::min<unsigned>(opts.jobs, static_cast<unsigned>(records.size())));
    if (n == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned i = 0; i < n; ++i) {
            pool.emplace_back(worker);
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    return out;
}

std::string to_json(const std::vector<RecordReport>& reports, bool timing)
{
    using json = nlohmann::ordered_json;
    json arr = json::array();
    for (const auto& r : reports) {
        json j;
        j["identity"] = r.id;
        j["status"] = r.pass ? "pass" : "fail";
        j["degree"] = r.degree;
        j["trials"] = r.trials;
        j["seed"] = r.seed;
        json fails = json::array();
        for (const auto& f : r.failures) {
            json fj;
            fj["trial"] = f.trial;
            fj["bindings"] = json(f.bindings);
            fj["k"] = f.k ? json(*f.k) : json(nullptr);
            fj["lhs"] = f.lhs;
            fj["rhs"] = f.rhs;
            if (!f.error.empty()) {
                fj["error"] = f.error;
            }
            fails.push_back(std::move(fj));
        }
        j["failures"] = std::move(fails);
        if (timing) {
            j["millis"] = r.millis;
        }
        arr.push_back(std::move(j));
    }
    return arr.dump(2) + "\n";
}

std::string to_csv(const std::vector<RecordReport>& reports)
{
    std::ostringstream os;
    os << "id,status,degree,millis\n";
    for (const auto& r : reports) {
        os << r.id << ',' << (r.pass ? "pass" : "fail") << ',' << r.degree << ','
           << static_cast<long long>(r.millis + 0.5) << '\n';
    }
    return os.str();
}

std::string to_text(const std::vector<RecordReport>& reports, bool timing)
{
    std::ostringstream os;
    std::size_t passed = 0;
    for (const auto& r : reports) {
        passed += r.pass ? 1 : 0;
        os << (r.pass ? "PASS " : "FAIL ") << r.id << "  (degree " << r.degree << ", " << r.trials
           << (r.trials == 1 ? " trial" : " trials");
        if (timing) {
            os << ", " << static_cast<long long>(r.millis + 0.5) << " ms";
        }
        os << ")\n";
        for (const auto& f : r.failures) {
            os << "    trial " << f.trial;
            for (const auto& [k, v] : f.bindings) {
                os << ' ' << k << '=' << v;
            }
            if (f.k) {
                os << ": first difference at q^" << *f.k << ", lhs " << f.lhs << ", rhs " << f.rhs;
            } else {
                os << ": " << f.error;
            }
            os << '\n';
        }
    }
    os << passed << "/" << reports.size() << " identities verified\n";
    return os.str();
}

} // namespace qlambert
