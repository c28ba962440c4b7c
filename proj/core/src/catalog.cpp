#include "qlambert/catalog.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace qlambert {

CatalogError::CatalogError(const std::string& message, std::string id, std::size_t line)
    : std::runtime_error("catalog" + (id.empty() ? std::string() : " record '" + id + "'")
                         + " line " + std::to_string(line) + ": " + message),
      id_(std::move(id)), line_(line)
{
}

namespace {

std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> words(const std::string& s)
{
    std::istringstream is(s);
    std::vector<std::string> out;
    for (std::string w; is >> w;) {
        out.push_back(w);
    }
    return out;
}

struct Field {
    std::string key;
    std::string value;
    std::size_t line;
};

class RecordBuilder {
public:
    explicit RecordBuilder(std::size_t line) { rec_.line = line; }

    void add(const Field& f)
    {
        if (f.key == "id") {
            rec_.id = f.value;
        } else if (f.key == "lhs") {
            rec_.lhs = expr(f);
        } else if (f.key == "rhs") {
            rec_.rhs = expr(f);
        } else if (f.key == "mode") {
            mode(f);
        } else if (f.key == "param") {
            param(f);
        } else if (f.key == "intparam") {
            int_param(f);
        } else if (f.key == "degree") {
            rec_.default_degree = static_cast<std::size_t>(integer(f, f.value, 1));
        } else if (f.key == "cite") {
            rec_.citation = f.value;
        } else {
            fail(f, "unknown key '" + f.key + "'");
        }
    }

    IdentityRecord finish()
    {
        if (rec_.id.empty()) {
            throw CatalogError("record without id", "", rec_.line);
        }
        if (!rec_.lhs) {
            throw CatalogError("missing lhs", rec_.id, rec_.line);
        }
        const bool subseq = rec_.mode.kind == ModeKind::SubseqEquals;
        if (!subseq && !rec_.rhs) {
            throw CatalogError("missing rhs", rec_.id, rec_.line);
        }
        std::set<std::string> declared;
        for (const auto& p : rec_.params) {
            declared.insert(p.name);
        }
        for (const auto& p : rec_.int_params) {
            declared.insert(p.name);
        }
        auto check = [&](const ExprPtr& e) {
            if (!e) {
                return;
            }
            for (const auto& name : referenced_params(*e)) {
                if (!declared.count(name)) {
                    throw CatalogError("parameter $" + name + " is not declared", rec_.id, rec_.line);
                }
            }
        };
        check(rec_.lhs);
        check(rec_.rhs);
        check(rec_.mode.stride);
        if (subseq && rec_.mode.target.kind == SubseqTarget::Kind::WeightedDivisorSum
            && !declared.count(rec_.mode.target.param)) {
            throw CatalogError("target parameter " + rec_.mode.target.param + " is not declared",
                               rec_.id, rec_.line);
        }
        for (const auto& p : rec_.params) {
            for (const auto& d : p.distinct_from) {
                if (!declared.count(d)) {
                    throw CatalogError("distinct=" + d + " names an undeclared parameter", rec_.id,
                                       rec_.line);
                }
            }
        }
        return std::move(rec_);
    }

private:
    [[noreturn]] void fail(const Field& f, const std::string& msg) const
    {
        throw CatalogError(msg, rec_.id, f.line);
    }

    ExprPtr expr(const Field& f) const
    {
        try {
            return parse(f.value);
        } catch (const ParseError& e) {
            fail(f, std::string("expression: ") + e.what());
        }
    }

    std::int64_t integer(const Field& f, const std::string& text, std::int64_t min) const
    {
        try {
            std::size_t used = 0;
            const auto v = std::stoll(text, &used);
            if (used != text.size() || v < min) {
                throw std::invalid_argument(text);
            }
            return v;
        } catch (const std::logic_error&) {
            fail(f, "expected an integer >= " + std::to_string(min) + ", got '" + text + "'");
        }
    }

    Rational rational(const Field& f, const std::string& text) const
    {
        try {
            return Rational::parse(text);
        } catch (const std::exception&) {
            fail(f, "expected a rational, got '" + text + "'");
        }
    }

    void mode(const Field& f)
    {
        const auto w = words(f.value);
        if (w.empty()) {
            fail(f, "empty mode");
        }
        auto& m = rec_.mode;
        if (w[0] == "equal") {
            m.kind = ModeKind::Equal;
        } else if (w[0] == "odd") {
            m.kind = ModeKind::OddFunction;
        } else if (w[0] == "even-coeff-equal") {
            m.kind = ModeKind::EvenCoeffEqual;
        } else if (w[0] == "subseq") {
            m.kind = ModeKind::SubseqEquals;
            bool have_target = false;
            for (std::size_t i = 1; i < w.size(); ++i) {
                const auto eq = w[i].find('=');
                const std::string key = w[i].substr(0, eq);
                const std::string val = eq == std::string::npos ? "" : w[i].substr(eq + 1);
                if (key == "stride") {
                    m.stride = expr({key, val, f.line});
                } else if (key == "target") {
                    have_target = true;
                    target(f, val);
                } else {
                    fail(f, "unknown subseq option '" + key + "'");
                }
            }
            if (!have_target) {
                fail(f, "subseq needs target=...");
            }
            if (!m.stride) {
                m.stride = ex::rat(Rational(1));
            }
        } else {
            fail(f, "unknown mode '" + w[0] + "'");
        }
        if (m.kind != ModeKind::SubseqEquals && w.size() > 1) {
            fail(f, "mode '" + w[0] + "' takes no options");
        }
    }

    void target(const Field& f, const std::string& val)
    {
        auto& t = rec_.mode.target;
        auto inner = [&](std::string_view prefix) -> std::optional<std::string> {
            if (val.size() > prefix.size() + 1 && val.compare(0, prefix.size(), prefix) == 0
                && val[prefix.size()] == '(' && val.back() == ')') {
                return val.substr(prefix.size() + 1, val.size() - prefix.size() - 2);
            }
            return std::nullopt;
        };
        if (auto k = inner("sigma")) {
            t.kind = SubseqTarget::Kind::Sigma;
            t.sigma_k = static_cast<unsigned>(integer(f, *k, 0));
        } else if (auto p = inner("wdivsum")) {
            t.kind = SubseqTarget::Kind::WeightedDivisorSum;
            t.param = *p;
        } else {
            fail(f, "unknown target '" + val + "'");
        }
    }

    void param(const Field& f)
    {
        const auto w = words(f.value);
        if (w.empty()) {
            fail(f, "param needs a name");
        }
        ParamSpec p;
        p.name = w[0];
        for (std::size_t i = 1; i < w.size(); ++i) {
            const auto eq = w[i].find('=');
            const std::string key = w[i].substr(0, eq);
            const std::string val = eq == std::string::npos ? "" : w[i].substr(eq + 1);
            if (key == "nonzero" && eq == std::string::npos) {
                p.nonzero = true;
            } else if (key == "ne") {
                p.excluded.push_back(rational(f, val));
            } else if (key == "fixed") {
                p.fixed = rational(f, val);
            } else if (key == "exp") {
                p.exponent = static_cast<std::size_t>(integer(f, val, 0));
            } else if (key == "distinct") {
                p.distinct_from.push_back(val);
            } else {
                fail(f, "unknown constraint '" + w[i] + "'");
            }
        }
        rec_.params.push_back(std::move(p));
    }

    void int_param(const Field& f)
    {
        const auto w = words(f.value);
        const auto dots = w.size() == 2 ? w[1].find("..") : std::string::npos;
        if (dots == std::string::npos) {
            fail(f, "intparam expects 'NAME LO..HI'");
        }
        IntParamSpec p{w[0], integer(f, w[1].substr(0, dots), INT64_MIN + 1),
                       integer(f, w[1].substr(dots + 2), INT64_MIN + 1)};
        if (p.lo > p.hi) {
            fail(f, "empty intparam range");
        }
        rec_.int_params.push_back(std::move(p));
    }

    IdentityRecord rec_;
};

} // namespace

std::vector<IdentityRecord> parse_catalog(std::string_view text)
{
    std::vector<IdentityRecord> out;
    std::vector<Field> fields;
    std::size_t block_line = 0;

    auto flush = [&] {
        if (fields.empty()) {
            return;
        }
        RecordBuilder b(block_line);
        for (const auto& f : fields) {
            b.add(f);
        }
        out.push_back(b.finish());
        fields.clear();
    };

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        const std::string_view raw = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        const std::string line = trim(raw);
        if (line.empty()) {
            flush();
            continue;
        }
        if (line[0] == '#') {
            continue;
        }
        // Indented lines continue the previous field.
        if ((raw[0] == ' ' || raw[0] == '\t') && !fields.empty()) {
            fields.back().value += " " + line;
            continue;
        }
        const auto colon = line.find(':');
        if (colon == std::string::npos) {
            throw CatalogError("expected 'key: value'", fields.empty() ? "" : fields.front().value,
                               line_no);
        }
        if (fields.empty()) {
            block_line = line_no;
        }
        fields.push_back({trim(line.substr(0, colon)), trim(line.substr(colon + 1)), line_no});
    }
    flush();

    std::set<std::string> ids;
    for (const auto& r : out) {
        if (!ids.insert(r.id).second) {
            throw CatalogError("duplicate id", r.id, r.line);
        }
    }
    return out;
}

std::vector<IdentityRecord> load_catalog(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw CatalogError("cannot open " + path.string(), "", 0);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_catalog(ss.str());
}

const std::vector<IdentityRecord>& builtin_catalog()
{
    static const std::vector<IdentityRecord> records = parse_catalog(builtin_catalog_text());
    return records;
}

const IdentityRecord* find_record(const std::vector<IdentityRecord>& records, std::string_view id)
{
    auto it = std::find_if(records.begin(), records.end(), [&](const auto& r) { return r.id == id; });
    return it == records.end() ? nullptr : &*it;
}

Bindings sample_params(const IdentityRecord& record, std::uint64_t seed, std::uint64_t trial)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
    std::mt19937_64 rng(seq);
    Bindings out;
    for (const auto& spec : record.params) {
        int rejects = 0;
        for (;;) {
            Rational c;
            if (spec.fixed) {
                c = *spec.fixed;
            } else {
                const auto r = std::uniform_int_distribution<std::int64_t>(1, 16)(rng);
                const auto p = std::uniform_int_distribution<std::int64_t>(-(r - 1), r - 1)(rng);
                c = Rational(p, r);
            }
            bool ok = !(spec.nonzero && c.is_zero());
            ok = ok && std::find(spec.excluded.begin(), spec.excluded.end(), c) == spec.excluded.end();
            for (const auto& other : spec.distinct_from) {
                auto it = out.find(other);
                ok = ok && !(it != out.end() && it->second.c == c && it->second.e == spec.exponent);
            }
            if (ok) {
                out[spec.name] = Param<Rational>{c, spec.exponent};
                break;
            }
            if (++rejects >= kMaxRejects) {
                throw SamplingError("record '" + record.id + "': no value for $" + spec.name
                                    + " satisfied its constraints after "
                                    + std::to_string(kMaxRejects) + " draws");
            }
        }
    }
    return out;
}

std::string format_param(const Param<Rational>& p)
{
    return p.e == 0 ? p.c.str() : p.c.str() + "," + std::to_string(p.e);
}

Param<Rational> parse_param(std::string_view text)
{
    const auto comma = text.find(',');
    Param<Rational> p{Rational::parse(trim(text.substr(0, comma))), 0};
    if (comma != std::string_view::npos) {
        const std::string e = trim(text.substr(comma + 1));
        std::size_t used = 0;
        long long v = -1;
        try {
            v = std::stoll(e, &used);
        } catch (const std::logic_error&) {
        }
        if (v < 0 || used != e.size()) {
            throw std::invalid_argument("exponent must be a natural number, got '" + e + "'");
        }
        p.e = static_cast<std::size_t>(v);
    }
    return p;
}

} // namespace qlambert
