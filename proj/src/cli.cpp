#include "ramify/cli.hpp"

#include "ramify/artin.hpp"
#include "ramify/cochain.hpp"
#include "ramify/emss.hpp"
#include "ramify/fgl.hpp"
#include "ramify/group.hpp"
#include "ramify/homalg.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <map>
#include <sstream>

namespace ramify {

using nlohmann::json;

namespace {

const std::vector<std::pair<std::string, std::string>> kCommandHelp = {
    {"pseries", "p-series [p^r]y of a formal group law"},
    {"weierstrass", "Weierstrass factorization of [p^r]y/y"},
    {"ring", "cochain ring Z/p^N[y]/(w) of a cyclic group"},
    {"reduce-k", "substitution map y -> [p^(k-1)]y between cochain rings"},
    {"tor", "Tor of the periodic resolution via Smith normal form"},
    {"kunneth", "Kunneth E2 page and its differentials"},
    {"compare", "comparison chain map and induced map on Tor"},
    {"rational", "Tor after inverting p"},
    {"converge", "compare E-infinity against the expected abutment"},
    {"socle", "socle series of a local algebra"},
    {"betti", "Betti numbers of the residue field"},
    {"nakayama", "randomized Nakayama checks"},
    {"emss", "pages of the divided power spectral sequence model"},
    {"group", "finite group checks"},
};

const std::vector<std::string> kCommands = [] {
    std::vector<std::string> out;
    for (const auto& [name, help] : kCommandHelp)
        out.push_back(name);
    return out;
}();

std::uint64_t word(const Coefficient& c)
{
    return c.integer().get_ui();
}

json coefficient_list(const std::vector<Coefficient>& cs)
{
    json out = json::array();
    for (const auto& c : cs)
        out.push_back(word(c));
    return out;
}

std::size_t valuation_of(mpz_class m, std::uint32_t p)
{
    std::size_t v = 0;
    while (m != 0 && m % p == 0) {
        m /= p;
        ++v;
    }
    return v;
}

json descriptor_json(const ModuleDescriptor& d, std::uint32_t p)
{
    json t = json::array();
    for (const auto& x : d.torsion)
        t.push_back(valuation_of(x, p));
    return {{"free", d.free}, {"torsion", t}};
}

std::string join(const std::vector<std::string>& parts, const std::string& sep)
{
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i)
        out += (i ? sep : "") + parts[i];
    return out;
}

template <class T> std::string join_numbers(const std::vector<T>& xs)
{
    std::vector<std::string> parts;
    for (const auto& x : xs)
        parts.push_back(std::to_string(x));
    return join(parts, ", ");
}

FormalGroupLaw make_fgl(const RunConfig& c, std::size_t precision)
{
    Context ctx = Context::mod_pn(c.p, c.N);
    if (c.law == "multiplicative") {
        if (c.n != 1)
            throw PreconditionError("the multiplicative law has height 1; got --n " + std::to_string(c.n));
        return make_multiplicative_fgl(c.p, precision, ctx);
    }
    if (c.law == "honda")
        return make_honda_fgl(c.p, c.n, precision, ctx);
    throw PreconditionError("unknown --law '" + c.law + "' (expected honda or multiplicative)");
}

std::size_t precision_or(const RunConfig& c, std::size_t fallback)
{
    return c.M == 0 ? fallback : c.M;
}

CyclicCochainRing make_ring(const RunConfig& c)
{
    std::size_t D = distinguished_degree(c.p, c.n, c.r);
    return make_cochain_ring(make_fgl(c, precision_or(c, D + 1)), c.r, c.N);
}

// ---- algebra input ----

FinAlgebra builtin_factor(const std::string& token, std::uint32_t p, const std::string& var)
{
    if (token == "ext")
        return exterior_algebra(p, var);
    if (token == "field")
        return prime_field(p);
    if (token.rfind("poly:", 0) == 0) {
        std::size_t m = 0;
        try {
            m = std::stoul(token.substr(5));
        } catch (const std::exception&) {
            throw PreconditionError("bad truncation in algebra factor '" + token + "'");
        }
        return truncated_polynomial(p, m, var);
    }
    throw PreconditionError("unknown algebra factor '" + token + "' (expected poly:m, ext or field)");
}

FinAlgebra builtin_algebra(const std::string& spec, std::uint32_t p)
{
    static const std::vector<std::string> vars = {"y", "z", "w", "u", "v", "x"};
    std::stringstream in(spec);
    std::string token;
    std::optional<FinAlgebra> acc;
    std::size_t i = 0;
    while (std::getline(in, token, '*')) {
        FinAlgebra f = builtin_factor(token, p, i < vars.size() ? vars[i] : "x" + std::to_string(i));
        acc = acc ? tensor_algebra(*acc, f) : f;
        ++i;
    }
    if (!acc)
        throw PreconditionError("empty algebra specification");
    return *acc;
}

FinAlgebra algebra_from_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw MalformedInput("cannot open algebra file " + path);
    json j;
    try {
        in >> j;
        auto p = j.at("prime").get<std::uint32_t>();
        std::vector<std::string> labels;
        std::vector<Parity> parities;
        for (const auto& b : j.at("basis")) {
            labels.push_back(b.at("label").get<std::string>());
            parities.emplace_back(b.value("parity", 0L));
        }
        auto unit = j.at("unit").get<FpVector>();
        auto aug = j.at("augmentation").get<FpVector>();
        std::vector<FinAlgebra::Product> products;
        for (const auto& t : j.at("products")) {
            if (!t.is_array() || t.size() != 4)
                throw MalformedInput("each product must be [left, right, target, value]");
            products.push_back({t[0].get<std::size_t>(), t[1].get<std::size_t>(), t[2].get<std::size_t>(),
                                t[3].get<std::uint32_t>()});
        }
        return FinAlgebra(p, std::move(labels), std::move(parities), products, unit, aug);
    } catch (const json::exception& e) {
        throw MalformedInput("malformed algebra file " + path + ": " + e.what());
    }
}

std::shared_ptr<const FinAlgebra> load_algebra(const RunConfig& c)
{
    if (!c.algebra_file.empty())
        return std::make_shared<const FinAlgebra>(algebra_from_file(c.algebra_file));
    return std::make_shared<const FinAlgebra>(builtin_algebra(c.algebra, c.p));
}

json algebra_json(const FinAlgebra& a)
{
    return {{"prime", a.prime()}, {"dimension", a.dim()}, {"basis", a.labels()}};
}

// ---- commands ----

void cmd_pseries(const RunConfig& c, Report& rep)
{
    std::size_t D = distinguished_degree(c.p, c.n, c.r);
    FormalGroupLaw F = make_fgl(c, precision_or(c, D + 2));
    TruncatedSeries s = p_series(F, c.r);
    std::size_t first_unit = s.precision();
    for (std::size_t i = 0; i < s.precision(); ++i)
        if (s[i].is_unit()) {
            first_unit = i;
            break;
        }
    rep.result = {{"law", F.name()},
                  {"precision", F.precision()},
                  {"coefficients", coefficient_list(s.coefficients())},
                  {"first_unit_degree", first_unit},
                  {"expected_unit_degree", D}};
    rep.lines.push_back("law: " + F.name());
    rep.lines.push_back("[p^r]y = " + s.to_string(10));
    rep.lines.push_back("first unit coefficient at y^" + std::to_string(first_unit) + " (p^{rn} = " +
                        std::to_string(D) + ")");
    rep.verdict = first_unit == D ? "OK" : "MISMATCH";
}

void cmd_weierstrass(const RunConfig& c, Report& rep)
{
    std::size_t D = distinguished_degree(c.p, c.n, c.r);
    FormalGroupLaw F = make_fgl(c, precision_or(c, D + 3));
    TruncatedSeries q = exact_quotient_by_y(p_series(F, c.r));
    WeierstrassFactorization wf = weierstrass_preparation(q);
    bool monomial = true;
    for (std::size_t i = 0; i < wf.degree(); ++i)
        monomial = monomial && reduce(wf.distinguished[i], Context::mod_p(c.p)).is_zero();
    bool remultiplies = multiply(wf.distinguished_series(q.precision()), wf.unit) == q;
    std::size_t v = wf.distinguished[0].valuation();
    rep.result = {{"degree", wf.degree()},
                  {"distinguished", coefficient_list(wf.distinguished)},
                  {"constant_valuation", v},
                  {"reduces_to_monomial", monomial},
                  {"remultiplies", remultiplies},
                  {"precision", q.precision()}};
    rep.lines.push_back("distinguished factor of [p^r]y/y: degree " + std::to_string(wf.degree()));
    std::vector<std::string> coeffs;
    for (const auto& x : wf.distinguished)
        coeffs.push_back(x.to_string());
    rep.lines.push_back("coefficients (low first): " + join(coeffs, ", "));
    rep.lines.push_back("constant term valuation: " + std::to_string(v));
    rep.lines.push_back(std::string("reduces to y^") + std::to_string(wf.degree()) + " mod p: " +
                        (monomial ? "yes" : "no"));
    rep.lines.push_back(std::string("distinguished * unit == [p^r]y/y mod y^") + std::to_string(q.precision()) +
                        ": " + (remultiplies ? "yes" : "no"));
    bool ok = monomial && remultiplies && wf.degree() + 1 == D && v == c.r;
    rep.verdict = ok ? "OK" : "MISMATCH";
}

void cmd_ring(const RunConfig& c, Report& rep)
{
    CyclicCochainRing R = make_ring(c);
    FinAlgebra k = mod_m_reduction(R);
    RingElement y = R.generator();
    Coefficient eq = augmentation(R.cofactor());
    rep.result = {{"rank", R.rank()},
                  {"relation", coefficient_list(R.relation())},
                  {"cofactor_augmentation", word(eq)},
                  {"generator_square", coefficient_list((y * y).coefficients())},
                  {"residue_dimension", k.dim()}};
    std::vector<std::string> rel;
    for (const auto& x : R.relation())
        rel.push_back(x.to_string());
    rep.lines.push_back("rank over Z/p^N: " + std::to_string(R.rank()));
    rep.lines.push_back("relation w (low first): " + join(rel, ", "));
    rep.lines.push_back("y*y = " + (y * y).to_string());
    rep.lines.push_back("augmentation of [p^r]y/y: " + eq.to_string());
    rep.lines.push_back("mod p: F_" + std::to_string(c.p) + "[y]/(y^" + std::to_string(k.dim()) + ")");
    rep.verdict = "OK";
}

void cmd_reduce_k(const RunConfig& c, Report& rep)
{
    std::size_t Dk = distinguished_degree(c.p, c.n, c.k);
    RingMorphism phi = substitution_map(make_fgl(c, precision_or(c, Dk + 1)), c.k, c.N);
    rep.result = {{"source_rank", phi.source.rank()},
                  {"target_rank", phi.target.rank()},
                  {"generator_image", coefficient_list(phi.generator_image.coefficients())},
                  {"injective", phi.injective()}};
    rep.lines.push_back("A_1 (rank " + std::to_string(phi.source.rank()) + ") -> A_" + std::to_string(c.k) + " (rank " +
                        std::to_string(phi.target.rank()) + ")");
    rep.lines.push_back("y -> " + phi.generator_image.to_string());
    rep.lines.push_back(std::string("injective: ") + (phi.injective() ? "yes" : "no"));
    rep.verdict = phi.injective() ? "MONOMORPHISM" : "NOT INJECTIVE";
}

json tor_json(const TorTable& t, std::uint32_t p)
{
    json out = json::array();
    for (const auto& [key, m] : t.entries)
        out.push_back({{"s", key.first}, {"t", key.second}, {"module", descriptor_json(m, p)}});
    return out;
}

void tor_lines(const TorTable& t, Report& rep)
{
    for (const auto& [key, m] : t.entries)
        rep.lines.push_back("Tor_" + std::to_string(key.first) + " = " + m.to_string());
}

void cmd_tor(const RunConfig& c, Report& rep)
{
    TorTable t = tor_table(make_ring(c), c.s_max);
    rep.result = {{"tor", tor_json(t, c.p)}};
    tor_lines(t, rep);
    rep.verdict = "OK";
}

void cmd_rational(const RunConfig& c, Report& rep)
{
    TorTable t = rational_tor(make_ring(c), c.s_max);
    rep.result = {{"tor", tor_json(t, c.p)}};
    tor_lines(t, rep);
    bool collapsed = true;
    for (const auto& [key, m] : t.entries)
        collapsed = collapsed && (key.first == 0 || m.is_zero());
    rep.verdict = collapsed ? "OK" : "MISMATCH";
}

void cmd_kunneth(const RunConfig& c, Report& rep)
{
    KunnethPage page = kunneth_page(make_ring(c), c.s_max);
    json diffs = json::array();
    for (const auto& d : page.differentials)
        diffs.push_back({{"page", d.page},
                         {"source_s", d.source_s},
                         {"target_s", d.target_s},
                         {"forced_zero", d.forced_zero},
                         {"reason", d.reason}});
    rep.result = {{"e2", tor_json(page.e2, c.p)},
                  {"differentials", diffs},
                  {"collapses", page.collapses},
                  {"odd_witnesses", page.odd_witnesses}};
    for (const auto& [key, m] : page.e2.entries)
        rep.lines.push_back("E2[" + std::to_string(key.first) + "," + std::to_string(key.second) + "] = " + m.to_string());
    for (const auto& d : page.differentials)
        rep.lines.push_back("d^" + std::to_string(d.page) + ": E[" + std::to_string(d.source_s) + "] -> E[" +
                            std::to_string(d.target_s) + "] " + (d.forced_zero ? "zero" : "open") + " (" + d.reason +
                            ")");
    rep.lines.push_back("odd total degree witnesses at s = " + join_numbers(page.odd_witnesses));
    rep.verdict = page.collapses ? "COLLAPSES" : "OPEN";
}

void cmd_compare(const RunConfig& c, Report& rep)
{
    if (c.s_max < 1)
        throw PreconditionError("compare needs --smax >= 1");
    std::size_t Dk = distinguished_degree(c.p, c.n, c.k);
    FormalGroupLaw F = make_fgl(c, precision_or(c, Dk + 1));
    auto maps = induced_tor_morphism(F, c.k, c.s_max, c.N);
    ComparisonChainMap cm = comparison_chain_map(F, c.k, c.s_max + 1, c.N);
    json m = json::array();
    bool injective = true;
    for (const auto& x : maps) {
        injective = injective && x.injective;
        m.push_back({{"s", x.s},
                     {"source", descriptor_json(x.source, c.p)},
                     {"target", descriptor_json(x.target, c.p)},
                     {"multiplier", x.multiplier.get_ui()},
                     {"injective", x.injective},
                     {"identity", x.identity}});
        rep.lines.push_back("s=" + std::to_string(x.s) + ": " + x.source.to_string() + " -> " + x.target.to_string() +
                            " by x" + x.multiplier.get_str() + (x.injective ? ", injective" : ", NOT injective"));
    }
    rep.result = {{"squares_checked", cm.squares_checked}, {"maps", m}};
    rep.lines.insert(rep.lines.begin(), "chain map squares commuting: " + std::to_string(cm.squares_checked));
    rep.verdict = injective ? "MONOMORPHISM" : "NOT INJECTIVE";
}

void cmd_converge(const RunConfig& c, Report& rep)
{
    ConvergenceReport cr = convergence_diagnostic(make_ring(c), c.s_max, c.rational);
    json w = json::array();
    for (const auto& [s, m] : cr.witnesses)
        w.push_back({{"s", s}, {"module", descriptor_json(m, c.p)}});
    rep.result = {{"mode", c.rational ? "rational" : "integral"},
                  {"expected", descriptor_json(cr.expected, c.p)},
                  {"observed_even", descriptor_json(cr.observed_even, c.p)},
                  {"observed_odd", descriptor_json(cr.observed_odd, c.p)},
                  {"witnesses", w}};
    rep.lines.push_back(std::string("mode: ") + (c.rational ? "rational" : "integral"));
    rep.lines.push_back("expected abutment: " + cr.expected.to_string() + " in even degree");
    rep.lines.push_back("E-infinity, even total degree: " + cr.observed_even.to_string());
    rep.lines.push_back("E-infinity, odd total degree: " + cr.observed_odd.to_string());
    for (const auto& [s, m] : cr.witnesses)
        rep.lines.push_back("odd witness at s=" + std::to_string(s) + ": " + m.to_string());
    rep.verdict = to_string(cr.verdict);
    if (cr.verdict == Verdict::Inconclusive)
        rep.exit_code = exit_code::inconclusive;
}

void cmd_socle(const RunConfig& c, Report& rep)
{
    auto A = load_algebra(c);
    SocleSeries ss = socle_series(regular_module(A));
    std::size_t e = nilpotency_exponent(*A);
    rep.result = {{"algebra", algebra_json(*A)},
                  {"socle_dimensions", ss.dimensions()},
                  {"length", ss.length()},
                  {"nilpotency_exponent", e}};
    rep.lines.push_back("algebra: " + join(A->labels(), ", "));
    rep.lines.push_back("socle dimensions: " + join_numbers(ss.dimensions()));
    rep.lines.push_back("socle length " + std::to_string(ss.length()) + ", radical nilpotency " + std::to_string(e));
    rep.verdict = ss.length() == e ? "OK" : "MISMATCH";
}

void cmd_betti(const RunConfig& c, Report& rep)
{
    auto A = load_algebra(c);
    auto betti = betti_numbers(*A, c.s_max, c.seed);
    bool positive = std::all_of(betti.begin(), betti.end(), [](std::size_t b) { return b > 0; });
    rep.result = {{"algebra", algebra_json(*A)}, {"betti", betti}};
    rep.lines.push_back("algebra: " + join(A->labels(), ", "));
    rep.lines.push_back("betti numbers: " + join_numbers(betti));
    rep.verdict = positive ? "NO ZERO THROUGH S" : "FINITE";
}

void cmd_nakayama(const RunConfig& c, Report& rep)
{
    auto A = load_algebra(c);
    NakayamaSweep sweep = nakayama_sweep(A, c.trials, 16, c.seed);
    rep.result = {{"algebra", algebra_json(*A)},
                  {"trials", sweep.trials},
                  {"violations", sweep.violations},
                  {"zero_modules", sweep.zero_modules},
                  {"max_module_dim", sweep.max_module_dim}};
    rep.lines.push_back("random modules checked: " + std::to_string(sweep.trials) + " (max dim " +
                        std::to_string(sweep.max_module_dim) + ")");
    rep.lines.push_back("violations: " + std::to_string(sweep.violations));
    rep.verdict = sweep.violations == 0 ? "CONSISTENT" : "VIOLATED";
}

json element_json(const DPBasisElement& e, std::uint32_t p)
{
    return {{"label", e.label(p)}, {"s", e.s(p)}, {"t", e.t(p)}};
}

void cmd_emss(const RunConfig& c, Report& rep)
{
    EmssReport er = final_page_report(c.p, c.S, c.window);
    json rounds = json::array();
    for (const auto& r : er.history.rounds) {
        rounds.push_back({{"round", r.round},
                          {"length", r.length},
                          {"naive_length", r.naive_length},
                          {"source", r.source},
                          {"target", r.target},
                          {"square_zero", r.square_zero},
                          {"leibniz", r.leibniz},
                          {"well_defined", r.well_defined},
                          {"ranks_non_increasing", r.ranks_non_increasing},
                          {"euler_preserved", r.euler_preserved}});
        rep.lines.push_back("round " + std::to_string(r.round) + ": d^" + std::to_string(r.length) + " " + r.source +
                            " -> " + r.target + (r.square_zero && r.leibniz && r.well_defined ? "" : " [CHECK FAILED]"));
    }
    json survivors = json::array();
    std::vector<std::string> labels;
    for (const auto& e : er.window_survivors) {
        survivors.push_back(element_json(e, c.p));
        labels.push_back(e.label(c.p));
    }
    rep.result = {{"window", er.window},
                  {"rounds", rounds},
                  {"first_page_structure", er.first_page_structure},
                  {"survivors", survivors},
                  {"zeta_truncation", er.zeta_truncation},
                  {"single_differential_agrees", er.single_differential_agrees}};
    if (!er.first_page_odd_class.digits.empty())
        rep.result["first_page_odd_class"] = element_json(er.first_page_odd_class, c.p);
    rep.lines.push_back("safe window: s <= " + std::to_string(er.window));
    if (er.verdict != Verdict::Inconclusive) {
        rep.lines.push_back("after round 1: F_p[zeta]/(zeta^p) (x) higher divided powers (x) Lambda(" +
                            er.first_page_odd_class.label(c.p) + ")" + (er.first_page_structure ? "" : " [FAILED]"));
        rep.lines.push_back("survivors in window: " + join(labels, ", "));
    }
    rep.verdict = to_string(er.verdict);
    if (er.verdict == Verdict::Inconclusive)
        rep.exit_code = exit_code::inconclusive;
}

json subgroup_json(const FiniteGroup& G, const std::vector<std::size_t>& H)
{
    json out = json::array();
    for (auto h : H)
        out.push_back(cycle_notation(G.element(h)));
    return out;
}

std::string subgroup_text(const FiniteGroup& G, const std::vector<std::size_t>& H)
{
    std::vector<std::string> parts;
    for (auto h : H)
        parts.push_back(cycle_notation(G.element(h)));
    return "{" + join(parts, ", ") + "}";
}

void cmd_group(const RunConfig& c, Report& rep)
{
    if (c.gens.empty())
        throw PreconditionError("group commands need --gens, e.g. \"(1,2);(1,2,3)\"");
    FiniteGroup G = FiniteGroup::generate(parse_generators(c.gens));
    rep.result["order"] = G.order();
    rep.lines.push_back("|G| = " + std::to_string(G.order()));
    if (c.action == "sylow") {
        auto P = sylow_subgroup(G, c.p, c.seed);
        rep.result["subgroup"] = subgroup_json(G, P);
        rep.lines.push_back("Sylow " + std::to_string(c.p) + "-subgroup: " + subgroup_text(G, P));
        rep.verdict = "FOUND";
    } else if (c.action == "complement") {
        auto N = normal_p_complement(G, c.p);
        rep.result["complement"] = N ? subgroup_json(G, *N) : json(nullptr);
        rep.lines.push_back("normal " + std::to_string(c.p) + "-complement: " + (N ? subgroup_text(G, *N) : "none"));
        rep.verdict = N ? "P-NILPOTENT" : "NOT P-NILPOTENT";
    } else if (c.action == "conjnil") {
        auto cn = conjugation_nilpotent(G, c.p);
        rep.result["nilpotent"] = cn.nilpotent;
        rep.result["dimensions"] = cn.dimensions;
        rep.result["stable_dimension"] = cn.stable.dim();
        rep.result["stable_invariant"] = cn.stable_invariant;
        rep.result["stable_has_no_trivial_quotient"] = cn.stable_has_no_trivial_quotient;
        rep.lines.push_back("chain dimensions: " + join_numbers(cn.dimensions));
        rep.lines.push_back("stable submodule dimension: " + std::to_string(cn.stable.dim()));
        rep.verdict = cn.nilpotent ? "NILPOTENT" : "NOT NILPOTENT";
    } else {
        throw PreconditionError("group needs one of sylow, complement, conjnil");
    }
}

json params_json(const RunConfig& c)
{
    json j = {{"p", c.p},       {"n", c.n},           {"r", c.r},           {"k", c.k},
              {"N", c.N},       {"M", c.M},           {"smax", c.s_max},    {"S", c.S},
              {"window", c.window}, {"trials", c.trials}, {"law", c.law},   {"rational", c.rational},
              {"seed", c.seed}};
    if (c.command == "socle" || c.command == "betti" || c.command == "nakayama")
        j["algebra"] = c.algebra_file.empty() ? c.algebra : c.algebra_file;
    if (c.command == "group") {
        j["gens"] = c.gens;
        j["action"] = c.action;
    }
    return j;
}

} // namespace

std::string Report::render(const std::string& format) const
{
    if (format == "json") {
        json j = {{"tool", "ramify"}, {"version", kVersion}, {"command", command},
                  {"params", params}, {"result", result},    {"verdict", verdict}};
        return j.dump(2) + "\n";
    }
    std::ostringstream out;
    out << "ramify " << command << " " << kVersion << "\n";
    std::vector<std::string> ps;
    for (auto it = params.begin(); it != params.end(); ++it)
        ps.push_back(it.key() + "=" + (it->is_string() ? it->get<std::string>() : it->dump()));
    out << "params: " << join(ps, " ") << "\n";
    for (const auto& l : lines)
        out << l << "\n";
    out << "verdict: " << verdict << "\n";
    return out.str();
}

Report run(const RunConfig& c)
{
    static const std::map<std::string, void (*)(const RunConfig&, Report&)> dispatch = {
        {"pseries", cmd_pseries}, {"weierstrass", cmd_weierstrass}, {"ring", cmd_ring},
        {"reduce-k", cmd_reduce_k}, {"tor", cmd_tor},               {"kunneth", cmd_kunneth},
        {"compare", cmd_compare}, {"rational", cmd_rational},       {"converge", cmd_converge},
        {"socle", cmd_socle},     {"betti", cmd_betti},             {"nakayama", cmd_nakayama},
        {"emss", cmd_emss},       {"group", cmd_group}};
    auto it = dispatch.find(c.command);
    if (it == dispatch.end())
        throw PreconditionError("unknown command " + c.command);
    if (c.format != "table" && c.format != "json")
        throw PreconditionError("--format must be table or json");
    Report rep;
    rep.command = c.command + (c.action.empty() ? "" : " " + c.action);
    rep.params = params_json(c);
    rep.result = json::object();
    it->second(c, rep);
    return rep;
}

namespace {

void add_common(CLI::App* app, RunConfig& c)
{
    app->add_option("--p", c.p, "prime");
    app->add_option("--n", c.n, "height of the formal group law");
    app->add_option("--r", c.r, "cyclic group exponent, order p^r");
    app->add_option("--k", c.k, "comparison exponent");
    app->add_option("--N", c.N, "p-adic precision, coefficients mod p^N");
    app->add_option("--M", c.M, "series precision (0 = automatic)");
    app->add_option("--smax", c.s_max, "largest homological degree");
    app->add_option("--S", c.S, "divided-power cutoff");
    app->add_option("--window", c.window, "EMSS bidegree window (0 = safe window)");
    app->add_option("--trials", c.trials, "random Nakayama trials");
    app->add_option("--law", c.law, "honda or multiplicative");
    app->add_flag("--rational", c.rational, "work over Q");
    app->add_option("--algebra", c.algebra, "built-in algebra, e.g. poly:3 or poly:2*poly:2 or poly:3*ext");
    app->add_option("--algebra-file", c.algebra_file, "algebra given as JSON");
    app->add_option("--gens", c.gens, "permutation generators, e.g. \"(1,2);(1,2,3)\"");
    app->add_option("--format", c.format, "table or json");
    app->add_option("--out", c.out, "write the report to this path");
    app->add_option("--seed", c.seed, "seed for randomized searches");
}

} // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    if (argc >= 2) {
        std::string first = argv[1];
        if (first.empty() || (first[0] != '-' && std::find(kCommands.begin(), kCommands.end(), first) == kCommands.end())) {
            err << "error: unknown subcommand '" << first << "'\n";
            return exit_code::unknown_command;
        }
    }

    CLI::App app{"Finite computations around ramified Galois extensions of Lubin-Tate spectra", "ramify"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    RunConfig c;
    for (const auto& [name, help] : kCommandHelp) {
        if (name == "group") {
            CLI::App* g = app.add_subcommand("group", help);
            g->require_subcommand(1);
            for (const char* action : {"sylow", "complement", "conjnil"})
                add_common(g->add_subcommand(action, std::string("group ") + action), c);
        } else {
            add_common(app.add_subcommand(name, help), c);
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_code::ok;
    } catch (const CLI::CallForVersion&) {
        out << kVersion << "\n";
        return exit_code::ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return exit_code::precondition;
    }

    for (auto* sub : app.get_subcommands()) {
        c.command = sub->get_name();
        for (auto* act : sub->get_subcommands())
            c.action = act->get_name();
    }

    Report rep;
    try {
        rep = run(c);
    } catch (const MalformedInput& e) {
        err << "error: " << e.what() << "\n";
        return exit_code::malformed_input;
    } catch (const PreconditionError& e) {
        err << "error: " << e.what() << "\n";
        return exit_code::precondition;
    }

    std::string text = rep.render(c.format);
    if (c.out) {
        std::ofstream f(*c.out, std::ios::binary);
        if (!f) {
            err << "error: cannot write " << *c.out << "\n";
            return exit_code::precondition;
        }
        f << text;
    } else {
        out << text;
    }
    return rep.exit_code;
}

} // namespace ramify
