#include "bvhh/driver.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "bvhh/bv.hpp"
#include "bvhh/cache.hpp"
#include "bvhh/cyclic.hpp"
#include "bvhh/presentation.hpp"

namespace bvhh {
namespace {

using ojson = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "bvhh-report/1";

const std::vector<std::string> kCorpus = {
    "f2",        "f3",        "q",     "dual_numbers_f2", "dual_numbers_q",
    "poly_x3_f3", "poly_x3_q", "m2_f3", "h_s2_f2",         "h_cp2_q"};

// ---------------------------------------------------------------- formatting

template <ScalarField F>
bool is_graded(const GradedAlgebra<F>& a) {
    for (int i = 0; i < a.dim(); ++i)
        if (a.degree(i) != 0) return true;
    return false;
}

template <ScalarField F>
std::string field_name(const F& f) {
    return f.characteristic() == 0 ? std::string("Q")
                                   : "F_" + std::to_string(f.characteristic());
}

template <ScalarField F>
std::string word_str(const GradedAlgebra<F>& a, const Word& w) {
    std::string s = "[";
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += "|";
        s += a.name(w[i]);
    }
    return s + "]";
}

template <ScalarField F>
std::string value_str(const F& f, const GradedAlgebra<F>& a,
                      const SparseVec<typename F::Elem>& v, bool dual) {
    if (v.empty()) return "0";
    std::string s;
    for (const auto& [i, c] : v) {
        if (!s.empty()) s += " + ";
        std::string nm = a.name(i) + (dual ? "^" : "");
        s += f.eq(c, f.one()) ? nm : f.to_string(c) + "*" + nm;
    }
    return s;
}

template <ScalarField F>
std::string cochain_str(const F& f, const GradedAlgebra<F>& a,
                        const Cochain<typename F::Elem>& g, bool dual) {
    if (g.vals.empty()) return "0";
    std::string s;
    for (const auto& [w, v] : g.vals) {
        if (!s.empty()) s += " ; ";
        s += word_str(a, w) + " -> " + value_str(f, a, v, dual);
    }
    return s;
}

/* Coordinates in a computed basis: "(0:1, 2:-1)" or "0". */
template <ScalarField F>
std::string coords_str(const F& f, const SparseVec<typename F::Elem>& v) {
    if (v.empty()) return "0";
    std::string s = "(";
    for (const auto& [i, c] : v) {
        if (s.size() > 1) s += ", ";
        s += std::to_string(i) + ":" + f.to_string(c);
    }
    return s + ")";
}

template <ScalarField F>
std::string mat_str(const F& f, const Mat<typename F::Elem>& m) {
    std::string s = "cols[";
    for (int j = 0; j < m.ncols(); ++j) {
        if (j) s += " ";
        s += coords_str(f, m.cols[j]);
    }
    return s + "]";
}

struct Report {
    std::ostringstream tab;
    ojson doc;
    bool structured;

    Report(const JobConfig& cfg) : structured(cfg.format == "structured") {
        doc["schema_version"] = kSchemaVersion;
        doc["command"] = cfg.command;
        tab << "schema: " << kSchemaVersion << "\n";
        tab << "command: " << cfg.command << "\n";
    }

    std::string finish() { return structured ? doc.dump(2) + "\n" : tab.str(); }
};

void emit_options(Report& r, const JobConfig& cfg) {
    r.tab << "options: coeff=" << cfg.coeff << " max-degree=" << cfg.max_degree;
    if (cfg.word_cutoff) r.tab << " word-cutoff=" << *cfg.word_cutoff;
    r.tab << " u-trunc=" << cfg.u_trunc << " variant=" << cfg.variant;
    if (cfg.command == "verify")
        r.tab << " suite=" << cfg.suite << " trials=" << cfg.trials << " seed=" << cfg.seed;
    if (!cfg.mutate_sign.empty()) r.tab << " mutate-sign=" << cfg.mutate_sign;
    r.tab << "\n";
    ojson o;
    o["coeff"] = cfg.coeff;
    o["max_degree"] = cfg.max_degree;
    o["word_cutoff"] = cfg.word_cutoff ? ojson(*cfg.word_cutoff) : ojson(nullptr);
    o["u_trunc"] = cfg.u_trunc;
    o["variant"] = cfg.variant;
    o["suite"] = cfg.suite;
    o["trials"] = cfg.trials;
    o["seed"] = cfg.seed;
    o["format"] = cfg.format;
    if (!cfg.mutate_sign.empty()) o["mutate_sign"] = cfg.mutate_sign;
    r.doc["options"] = std::move(o);
}

template <ScalarField F>
void emit_algebra(Report& r, const std::string& path, const F& f, const GradedAlgebra<F>& a) {
    bool g = is_graded(a);
    r.tab << "algebra: " << path << " (" << field_name(f) << ", dim " << a.dim()
          << (g ? ", graded" : "") << ")\n";
    ojson meta;
    meta["path"] = path;
    meta["field"] = field_name(f);
    meta["dim"] = a.dim();
    meta["graded"] = g;
    r.doc["algebra"] = std::move(meta);
}

// ------------------------------------------------------------- configuration

Coeff parse_coeff(const std::string& s) {
    if (s == "self") return Coeff::Self;
    if (s == "dual") return Coeff::Dual;
    throw InputError("--coeff must be 'self' or 'dual', got '" + s + "'");
}

CyclicVariant parse_variant(const std::string& s) {
    if (s == "cyclic") return CyclicVariant::Cyclic;
    if (s == "negative") return CyclicVariant::Negative;
    if (s == "periodic") return CyclicVariant::Periodic;
    throw InputError("--variant must be cyclic, negative, or periodic, got '" + s + "'");
}

template <ScalarField F>
typename Workbench<F>::Options make_options(const JobConfig& cfg) {
    typename Workbench<F>::Options o;
    o.word_cutoff = cfg.word_cutoff;
    if (cfg.mutate_sign.empty()) return o;
    if (cfg.mutate_sign == "epsilon-bar") o.conventions.flip_epsilon_bar = true;
    else if (cfg.mutate_sign == "d2-wraparound") o.conventions.flip_d2_wraparound = true;
    else if (cfg.mutate_sign == "b-rotation") o.conventions.flip_b_rotation = true;
    else if (cfg.mutate_sign == "bdual-prefactor") o.conventions.flip_bdual_prefactor = true;
    else throw InputError("unknown sign mutation '" + cfg.mutate_sign + "'");
    return o;
}

/* Ungraded slices grow like dim*(dim-1)^length; refuse windows whose deepest
   slice is astronomically large unless the user opts into a cutoff. */
template <ScalarField F>
void guard_window_depth(const GradedAlgebra<F>& a, const JobConfig& cfg, MixedSide side,
                        CyclicVariant v, long long lo, long long hi) {
    if (is_graded(a) || cfg.word_cutoff) return;
    long long len = 0;
    long long reach = 2LL * (cfg.u_trunc + 2);
    if (side == MixedSide::Chain)
        len = v == CyclicVariant::Cyclic ? hi + 1 : hi + 1 + reach;
    else
        len = v == CyclicVariant::Negative ? 1 - lo : 1 - lo + reach;
    if (len < 0) len = 0;
    double est = a.dim();
    for (long long i = 0; i < len && est < 1e18; ++i) est *= std::max(1, a.dim() - 1);
    if (est > 3e6)
        throw InputError("the requested window reaches bar words of length " +
                         std::to_string(len) + " (about " + std::to_string((long long)est) +
                         " basis elements per slice); pass --word-cutoff to truncate, or "
                         "shrink --max-degree/--u-trunc");
}

// ------------------------------------------------------------------- cmd: hh

template <ScalarField F>
JobResult cmd_hh(const F& f, const json& adoc, const std::string& path, const JobConfig& cfg) {
    auto la = load_algebra(f, adoc);
    Workbench<F> wb(la.algebra, make_options<F>(cfg));
    const auto& a = wb.algebra();
    Coeff c = parse_coeff(cfg.coeff);
    bool dual = c == Coeff::Dual;

    Report r(cfg);
    emit_algebra(r, path, f, a);
    emit_options(r, cfg);

    long long nlo = is_graded(a) ? -cfg.max_degree : 0, nhi = cfg.max_degree;
    std::vector<int> dims;
    for (long long n = nlo; n <= nhi; ++n) dims.push_back(wb.cohomology(c, -n).dim());

    r.tab << "dims (HH^" << nlo << "..HH^" << nhi << "): [";
    for (std::size_t k = 0; k < dims.size(); ++k) r.tab << (k ? "," : "") << dims[k];
    r.tab << "]\n\n";
    r.doc["dims"] = dims;

    ojson groups = ojson::array();
    for (long long n = nlo; n <= nhi; ++n) {
        long long t = -n;
        const auto& sq = wb.cohomology(c, t);
        const auto& slice = wb.cochain_slice(c, t);
        r.tab << "HH^" << n << " (lower degree " << t << "): dim " << sq.dim()
              << (slice.truncated ? "  [cutoff-truncated]" : "") << "\n";
        ojson grp;
        grp["degree_upper"] = n;
        grp["degree_lower"] = t;
        grp["dim"] = sq.dim();
        grp["truncated"] = slice.truncated;
        ojson reps = ojson::array();
        for (int k = 0; k < sq.dim(); ++k) {
            std::string rep = cochain_str(f, a, wb.class_rep(c, t, k), dual);
            r.tab << "  rep " << k << ": " << rep << "\n";
            reps.push_back(rep);
        }
        grp["representatives"] = std::move(reps);
        groups.push_back(std::move(grp));
    }
    r.doc["groups"] = std::move(groups);
    return {0, r.finish()};
}

// ------------------------------------------------------------------- cmd: bv

template <ScalarField F>
Cochain<typename F::Elem> read_cochain_file(const F& f, const GradedAlgebra<F>& a,
                                            const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open cocycle file '" + path + "'");
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw InputError("malformed cocycle file '" + path + "': " + e.what());
    }
    if (!doc.contains("degree") || !doc["degree"].is_number_integer())
        throw InputError("cocycle file needs an integer 'degree'");

    std::map<std::string, int> index;
    for (int i = 0; i < a.dim(); ++i) index[a.name(i)] = i;
    auto lookup = [&](const json& v) {
        if (!v.is_string() || !index.count(v.get<std::string>()))
            throw InputError("cocycle file names unknown basis element " + v.dump());
        return index.at(v.get<std::string>());
    };

    Cochain<typename F::Elem> m{doc["degree"].get<long long>(), {}};
    for (const auto& entry : doc.value("values", json::array())) {
        Word w;
        for (const auto& nm : entry.at("word")) {
            int i = lookup(nm);
            if (i == a.unit_index())
                throw InputError("normalized cochains vanish on words containing the unit");
            w.push_back(i);
        }
        std::map<int, typename F::Elem> acc;
        for (const auto& t : entry.at("value")) acc[lookup(t.at("name"))] = parse_scalar(f, t.at("coeff"));
        if (m.vals.count(w))
            throw InputError("cocycle file lists the word " + word_str(a, w) + " twice");
        m.vals.emplace(std::move(w), sv_from_map(f, acc));
    }
    return m;
}

template <ScalarField F>
BvStructure<F> build_bv(Workbench<F>& wb, const LoadedAlgebra<F>& la, const JobConfig& cfg) {
    if (!cfg.m_cocycle.empty()) {
        auto m = read_cochain_file(wb.field(), wb.algebra(), cfg.m_cocycle);
        const auto& slice = wb.cochain_slice(Coeff::Dual, m.deg);
        for (const auto& [w, v] : m.vals)
            for (const auto& [i, c] : v)
                if (!slice.index.count({w, i}))
                    throw InputError("cocycle entry " + word_str(wb.algebra(), w) + " -> " +
                                     wb.algebra().name(i) + "^ does not lie in the degree " +
                                     std::to_string(m.deg) + " slice");
        return BvStructure<F>(wb, fundamental_class(wb, std::move(m)));
    }
    if (!la.pairing)
        throw InputError("the algebra file has no pairing; add one or pass --m-cocycle");
    return BvStructure<F>(wb,
                          fundamental_class(wb, FrobeniusStructure<F>(la.algebra, *la.pairing)));
}

template <ScalarField F>
JobResult cmd_bv(const F& f, const json& adoc, const std::string& path, const JobConfig& cfg) {
    auto la = load_algebra(f, adoc);
    Workbench<F> wb(la.algebra, make_options<F>(cfg));
    const auto& a = wb.algebra();
    auto bv = build_bv(wb, la, cfg);

    Report r(cfg);
    emit_algebra(r, path, f, a);
    emit_options(r, cfg);
    r.tab << "fundamental class: lower degree d = " << bv.shift()
          << ", [B^vee m] = 0: " << (bv.fundamental().bdual_class_vanishes ? "yes" : "no") << "\n\n";
    r.doc["fundamental"] = {{"shift", bv.shift()},
                            {"bdual_class_vanishes", bv.fundamental().bdual_class_vanishes}};

    long long tlo = -cfg.max_degree, thi = is_graded(a) ? cfg.max_degree : 0;

    // per-degree tables; constructing duality already certifies invertibility
    bool delta_sq = true;
    ojson degrees = ojson::array();
    for (long long t = tlo; t <= thi; ++t) {
        int dim = wb.cohomology(Coeff::Self, t).dim();
        const auto& d = bv.duality(t);
        const auto& dl = bv.delta(t);
        bool sq = true;
        for (const auto& col : dl.cols)
            if (!bv.delta_class(t + 1, col).empty()) sq = false;
        delta_sq = delta_sq && sq;
        r.tab << "degree " << t << " (HH^" << -t << "): dim " << dim << "\n";
        if (dim > 0) {
            r.tab << "  duality D_" << t << ": " << mat_str(f, d) << " (invertible)\n";
            r.tab << "  delta_" << t << ": " << mat_str(f, dl) << "\n";
        }
        ojson row;
        row["degree_lower"] = t;
        row["degree_upper"] = -t;
        row["dim"] = dim;
        row["duality_invertible"] = true;
        row["delta_squared_zero"] = sq;
        degrees.push_back(std::move(row));
    }
    r.doc["degrees"] = std::move(degrees);

    bool delta_unit = bv.delta_unit().empty();

    // identity battery and bracket table over all generator pairs
    int pairs = 0, fail_three = 0, fail_seven = 0, fail_module = 0;
    ojson brackets = ojson::array();
    std::ostringstream btab;
    int zero_brackets = 0;
    std::ostringstream fails;
    for (long long ta = tlo; ta <= thi; ++ta)
        for (long long tb = tlo; tb <= thi; ++tb) {
            int na = wb.cohomology(Coeff::Self, ta).dim();
            int nb = wb.cohomology(Coeff::Self, tb).dim();
            for (int i = 0; i < na; ++i)
                for (int j = 0; j < nb; ++j) {
                    SparseVec<typename F::Elem> ca{{i, f.one()}}, cb{{j, f.one()}};
                    ++pairs;
                    auto rep = check_bv_relation(bv, ta, ca, tb, cb);
                    bool mm = duality_is_module_map(bv, ta, ca, tb, cb);
                    if (!rep.three_term_holds) ++fail_three;
                    if (!rep.seven_term_holds) ++fail_seven;
                    if (!mm) ++fail_module;
                    if (!rep.three_term_holds || !rep.seven_term_holds || !mm)
                        fails << "  FAIL pair g" << i << "@" << ta << ", g" << j << "@" << tb
                              << ": bracket = " << coords_str(f, rep.bracket)
                              << ", three-term rhs = " << coords_str(f, rep.rhs_three)
                              << ", seven-term rhs = " << coords_str(f, rep.rhs_seven)
                              << ", module map: " << (mm ? "ok" : "broken") << "\n";
                    std::string key = "{g" + std::to_string(i) + "@" + std::to_string(ta) + ", g" +
                                      std::to_string(j) + "@" + std::to_string(tb) + "}";
                    if (rep.bracket.empty()) {
                        ++zero_brackets;
                    } else {
                        btab << "  " << key << " = " << coords_str(f, rep.bracket) << " @ degree "
                             << ta + tb + 1 << "\n";
                        brackets.push_back(ojson{{"pair", key},
                                                 {"degree", ta + tb + 1},
                                                 {"value", coords_str(f, rep.bracket)}});
                    }
                }
        }

    r.tab << "\nbracket table (nonzero on generators; " << zero_brackets << " zero pairs):\n"
          << btab.str();
    r.doc["brackets"] = std::move(brackets);

    bool ok = delta_sq && delta_unit && !fail_three && !fail_seven && !fail_module;
    r.tab << "\nidentity.duality_invertible: pass (" << thi - tlo + 1 << " degrees)\n";
    r.tab << "identity.delta_squared: " << (delta_sq ? "pass" : "FAIL") << "\n";
    r.tab << "identity.delta_unit: " << (delta_unit ? "pass" : "FAIL") << "\n";
    r.tab << "identity.three_term: " << (fail_three ? "FAIL" : "pass") << " (" << pairs
          << " pairs)\n";
    r.tab << "identity.seven_term: " << (fail_seven ? "FAIL" : "pass") << " (" << pairs
          << " pairs)\n";
    r.tab << "identity.module_map: " << (fail_module ? "FAIL" : "pass") << " (" << pairs
          << " pairs)\n";
    if (!ok) r.tab << fails.str();
    r.doc["identities"] = {{"duality_invertible", "pass"},
                           {"delta_squared", delta_sq ? "pass" : "fail"},
                           {"delta_unit", delta_unit ? "pass" : "fail"},
                           {"three_term", fail_three ? "fail" : "pass"},
                           {"seven_term", fail_seven ? "fail" : "pass"},
                           {"module_map", fail_module ? "fail" : "pass"},
                           {"pairs", pairs}};
    r.tab << "status: " << (ok ? "ok" : "identity failures") << "\n";
    r.doc["status"] = ok ? "ok" : "fail";
    return {ok ? 0 : 2, r.finish()};
}

// --------------------------------------------------------------- cmd: cyclic

template <ScalarField F>
JobResult cmd_cyclic(const F& f, const json& adoc, const std::string& path,
                     const JobConfig& cfg) {
    auto la = load_algebra(f, adoc);
    Workbench<F> wb(la.algebra, make_options<F>(cfg));
    const auto& a = wb.algebra();
    MixedSide side = parse_coeff(cfg.coeff) == Coeff::Self ? MixedSide::Chain : MixedSide::Dual;
    CyclicVariant variant = parse_variant(cfg.variant);
    if (cfg.u_trunc < 0) throw InputError("--u-trunc must be nonnegative");

    bool g = is_graded(a);
    long long lo = (side == MixedSide::Chain && !g) ? 0 : -cfg.max_degree;
    long long hi = cfg.max_degree;
    guard_window_depth(a, cfg, side, variant, lo, hi);

    Report r(cfg);
    emit_algebra(r, path, f, a);
    emit_options(r, cfg);
    const char* names[] = {"HC", "HC^-", "HP"};
    const char* nm = names[static_cast<int>(variant)];
    r.tab << "side: " << (side == MixedSide::Chain ? "chains C_*(A;A) with (b, B)"
                                                   : "dual cochains C^*(A;A^) with (b^vee, B^vee)")
          << "\n";
    r.doc["side"] = cfg.coeff;

    MixedComplex<F> mc(wb, side);
    if (cfg.word_cutoff) {
        // results are exact only when the window never touches a clipped slice
        long long rlo = lo - (variant != CyclicVariant::Negative ? 2 * (cfg.u_trunc + 1) : 0) - 3;
        long long rhi = hi + (variant != CyclicVariant::Cyclic ? 2 * (cfg.u_trunc + 1) : 0) + 3;
        for (long long deg = rlo; deg <= rhi; ++deg)
            if (mc.truncated(deg))
                throw InputError("the window touches bar words clipped by --word-cutoff (degree " +
                                 std::to_string(deg) +
                                 " slice is truncated); raise the cutoff or shrink "
                                 "--max-degree/--u-trunc");
    }
    mc.assert_mixed_identities(lo, hi);
    r.tab << "mixed identities (b^2, B^2, bB+Bb on [" << lo << "," << hi << "]): pass\n\n";
    r.doc["mixed_identities"] = "pass";

    auto info = compute_cyclic(mc, variant, lo, hi, cfg.u_trunc);

    r.tab << "dims (" << nm << "_" << lo << ".." << nm << "_" << hi << "): [";
    for (long long n = lo; n <= hi; ++n) r.tab << (n > lo ? "," : "") << info[n].dim;
    r.tab << "]\n";
    ojson groups = ojson::array();
    for (long long n = lo; n <= hi; ++n) {
        r.tab << nm << "_" << n << " (upper degree " << -n << "): dim " << info[n].dim
              << ", stabilized: " << (info[n].stable ? "yes" : "no") << " (U=" << cfg.u_trunc
              << ")\n";
        groups.push_back(ojson{{"degree", n},
                               {"degree_upper", -n},
                               {"dim", info[n].dim},
                               {"stabilized", info[n].stable}});
    }
    r.doc["groups"] = std::move(groups);

    bool all_exact = true;
    if (variant == CyclicVariant::Periodic) {
        r.tab << "\nconnes sequence: not defined for the periodic variant (d_total^2 = 0 "
                 "certified by assembly)\n";
        r.doc["exactness"] = "not applicable";
    } else if (cfg.u_trunc == 0) {
        r.tab << "\nconnes sequence: skipped (needs --u-trunc >= 1)\n";
        r.doc["exactness"] = "skipped";
    } else {
        CyclicComplex<F> cc(mc, variant, cfg.u_trunc), below(mc, variant, cfg.u_trunc - 1);
        r.tab << "\nconnes long exact sequence (joints around each degree):\n";
        ojson ex = ojson::array();
        for (long long n = lo; n <= hi; ++n) {
            bool okn = connes_sequence_exact_at(cc, below, n);
            all_exact = all_exact && okn;
            r.tab << "  exact at " << n << ": " << (okn ? "yes" : "NO") << "\n";
            ex.push_back(ojson{{"degree", n}, {"exact", okn}});
        }
        r.doc["exactness"] = std::move(ex);
    }

    // Lie bracket layer: dual-side cyclic carries the degree (2-d) bracket,
    // chain-side cyclic the transported degree 2 bracket behind the unit gate
    bool lie_ok = true;
    std::ostringstream lie;
    ojson liej;
    if (variant == CyclicVariant::Cyclic) {
        std::vector<long long> stable;
        for (long long n = lo; n <= hi; ++n) {
            if (info[n].stable && info[n].dim > 0) stable.push_back(n);
            else if (!info[n].stable)
                lie << "  degree " << n << ": bracket skipped (unstable at U=" << cfg.u_trunc
                    << "; raise --u-trunc)\n";
        }
        CyclicComplex<F> cc(mc, variant, cfg.u_trunc);
        if (side == MixedSide::Dual && la.pairing) {
            BvStructure<F> bv(wb, fundamental_class(
                                      wb, FrobeniusStructure<F>(la.algebra, *la.pairing)));
            long long ell = 2 - bv.shift();
            lie << "  bracket lower degree: 2 - d = " << ell << "\n";
            int nonzero = 0, apairs = 0, afail = 0, jtriples = 0, jfail = 0;
            auto br = [&](long long tx, const SparseVec<typename F::Elem>& x, long long ty,
                          const SparseVec<typename F::Elem>& y) {
                return cyclic_lie_bracket(bv, cc, tx, x, ty, y);
            };
            for (long long tx : stable)
                for (long long ty : stable)
                    for (int i = 0; i < info[tx].dim; ++i)
                        for (int j = 0; j < info[ty].dim; ++j) {
                            SparseVec<typename F::Elem> x{{i, f.one()}}, y{{j, f.one()}};
                            auto xy = br(tx, x, ty, y);
                            auto yx = br(ty, y, tx, x);
                            ++apairs;
                            auto want = sv_scale(
                                f, yx.coords,
                                f.neg(sign_of(f, (tx + ell) * (ty + ell))));
                            if (!(xy.coords == want)) ++afail;
                            if (!xy.coords.empty()) {
                                ++nonzero;
                                lie << "  {g" << i << "@" << tx << ", g" << j << "@" << ty
                                    << "} = " << coords_str(f, xy.coords) << " @ degree "
                                    << xy.deg << "\n";
                            }
                        }
            std::vector<long long> tri(stable.begin(),
                                       stable.begin() + std::min<std::size_t>(stable.size(), 5));
            for (long long tx : tri)
                for (long long ty : tri)
                    for (long long tz : tri) {
                        SparseVec<typename F::Elem> x{{0, f.one()}};
                        auto yz = br(ty, x, tz, x);
                        auto xy = br(tx, x, ty, x);
                        auto xz = br(tx, x, tz, x);
                        auto lhs = br(tx, x, yz.deg, yz.coords);
                        auto r1 = br(xy.deg, xy.coords, tz, x);
                        auto r2 = br(ty, x, xz.deg, xz.coords);
                        auto rhs = sv_axpy(f, r1.coords, sign_of(f, (tx + ell) * (ty + ell)),
                                           r2.coords);
                        ++jtriples;
                        if (!(lhs.coords == rhs)) ++jfail;
                    }
            lie << "  nonzero brackets: " << nonzero << "\n";
            lie << "  lie.antisymmetry: " << (afail ? "FAIL" : "pass") << " (" << apairs
                << " pairs)\n";
            lie << "  lie.jacobi: " << (jfail ? "FAIL" : "pass") << " (" << jtriples
                << " triples)\n";
            lie_ok = !afail && !jfail;
            liej = {{"kind", "dual (2-d)"},
                    {"antisymmetry", afail ? "fail" : "pass"},
                    {"jacobi", jfail ? "fail" : "pass"},
                    {"pairs", apairs},
                    {"triples", jtriples}};
        } else if (side == MixedSide::Dual) {
            lie << "  skipped (no pairing in the algebra file)\n";
            liej = "skipped (no pairing)";
        } else {
            long long glo = g ? -cfg.max_degree : -cfg.max_degree;
            if (tc_gate(wb, glo, 0)) {
                int nonzero = 0, apairs = 0, afail = 0;
                for (long long tx : stable)
                    for (long long ty : stable) {
                        if (tx < 0 || ty < 0) continue;
                        for (int i = 0; i < info[tx].dim; ++i)
                            for (int j = 0; j < info[ty].dim; ++j) {
                                SparseVec<typename F::Elem> x{{i, f.one()}}, y{{j, f.one()}};
                                auto xy = cyclic_lie_bracket_chain(wb, cc, tx, x, ty, y);
                                auto yx = cyclic_lie_bracket_chain(wb, cc, ty, y, tx, x);
                                ++apairs;
                                auto want = sv_scale(f, yx.coords,
                                                     f.neg(sign_of(f, tx * ty)));
                                if (!(xy.coords == want)) ++afail;
                                if (!xy.coords.empty()) {
                                    ++nonzero;
                                    lie << "  {g" << i << "@" << tx << ", g" << j << "@" << ty
                                        << "} = " << coords_str(f, xy.coords) << " @ degree "
                                        << xy.deg << "\n";
                                }
                            }
                    }
                lie << "  nonzero brackets: " << nonzero << "\n";
                lie << "  lie.antisymmetry: " << (afail ? "FAIL" : "pass") << " (" << apairs
                    << " pairs)\n";
                lie_ok = !afail;
                liej = {{"kind", "chain (degree 2, unit-gate)"},
                        {"antisymmetry", afail ? "fail" : "pass"},
                        {"pairs", apairs}};
            } else {
                lie << "  skipped (the unit-cycle contraction is not invertible on [" << glo
                    << ",0]; use --coeff dual)\n";
                liej = "skipped (unit gate failed)";
            }
        }
        r.tab << "\nlie bracket:\n" << lie.str();
        r.doc["lie"] = std::move(liej);
    }

    bool ok = all_exact && lie_ok;
    r.tab << "status: " << (ok ? "ok" : "violations found") << "\n";
    r.doc["status"] = ok ? "ok" : "fail";
    return {ok ? 0 : 2, r.finish()};
}

// --------------------------------------------------------------- cmd: verify

/* Pairing-free cup and bracket at cohomology class level. */
template <ScalarField F>
struct ClassOps {
    Workbench<F>& wb;
    using Vec = SparseVec<typename F::Elem>;

    Cochain<typename F::Elem> rep(long long t, const Vec& c) {
        return vec_to_cochain(wb.field(), wb.cochain_slice(Coeff::Self, t),
                              wb.cohomology(Coeff::Self, t).from_coords(c));
    }
    Vec cls(long long t, const Cochain<typename F::Elem>& g) {
        auto c = wb.class_coords(Coeff::Self, t, g);
        if (!c) throw TheoremViolation("a product left the cocycles at degree " + std::to_string(t));
        return *c;
    }
    Vec cup(long long ta, const Vec& ca, long long tb, const Vec& cb) {
        return cls(ta + tb, act_on_slice(wb.ops(), wb.module(Coeff::Self), rep(ta, ca),
                                         rep(tb, cb), wb.cochain_slice(Coeff::Self, ta + tb)));
    }
    Vec br(long long ta, const Vec& ca, long long tb, const Vec& cb) {
        return cls(ta + tb + 1, bracket_on_slice(wb.ops(), rep(ta, ca), rep(tb, cb),
                                                 wb.cochain_slice(Coeff::Self, ta + tb + 1)));
    }
};

struct CheckSink {
    std::ostringstream tab;
    ojson checks = ojson::array();
    int total = 0, failed = 0;

    void add(const std::string& fixture, const std::string& name, bool ok,
             const std::string& detail) {
        ++total;
        if (!ok) ++failed;
        tab << "check " << fixture << " " << name << ": " << (ok ? "pass" : "FAIL");
        if (!detail.empty()) tab << " (" << detail << ")";
        tab << "\n";
        checks.push_back(ojson{{"fixture", fixture},
                               {"check", name},
                               {"status", ok ? "pass" : "fail"},
                               {"detail", detail}});
    }
};

inline std::uint64_t fnv64(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

template <ScalarField F>
typename F::Elem rand_nonzero(const F& f, std::mt19937_64& rng) {
    std::uint64_t p = f.characteristic();
    std::uint64_t span = p == 0 ? 6 : p - 1;
    return f.from_int(1 + static_cast<long long>(rng() % span));
}

template <ScalarField F>
SparseVec<typename F::Elem> random_class(const F& f, std::mt19937_64& rng, int dim) {
    std::map<int, typename F::Elem> m;
    for (int i = 0; i < dim; ++i)
        if (rng() % 2) m[i] = rand_nonzero(f, rng);
    if (m.empty()) m[static_cast<int>(rng() % dim)] = rand_nonzero(f, rng);
    return sv_from_map(f, m);
}

template <ScalarField F>
void verify_fixture(const F& f, const json& adoc, const std::string& label,
                    const JobConfig& cfg, CheckSink& sink) {
    auto la = load_algebra(f, adoc);
    Workbench<F> wb(la.algebra, make_options<F>(cfg));
    const auto& a = wb.algebra();
    bool g = is_graded(a);
    auto want = [&](const std::string& s) { return cfg.suite == "all" || cfg.suite == s; };
    long long W = cfg.max_degree;

    auto cochain_basis_str = [&](Coeff c, long long deg, int j) {
        const auto& p = wb.cochain_slice(c, deg).basis[j];
        return word_str(a, p.first) + " -> " + a.name(p.second) + (c == Coeff::Dual ? "^" : "");
    };
    auto mixed_basis_str = [&](MixedSide side, long long deg, int j) {
        if (side == MixedSide::Dual) return cochain_basis_str(Coeff::Dual, deg, j);
        const auto& p = wb.chain_slice(deg).basis[j];
        return a.name(p.first) + word_str(a, p.second);
    };
    /* first nonzero column of a composite, rendered as a bar-notation datum */
    auto witness_col = [&](const Mat<typename F::Elem>& m) {
        for (int j = 0; j < m.ncols(); ++j)
            if (!m.cols[j].empty()) return j;
        return -1;
    };

    if (want("differentials")) {
        try {
            bool ok = true;
            std::string witness;
            for (Coeff c : {Coeff::Self, Coeff::Dual})
                for (long long t = (g ? W : 1); t >= -W + 1 && ok; --t) {
                    auto sq = mat_compose(f, wb.d1(c, t - 1), wb.d1(c, t));
                    if (int j = witness_col(sq); j >= 0) {
                        ok = false;
                        witness = "D^2 != 0 on " + cochain_basis_str(c, t, j) + " at degree " +
                                  std::to_string(t);
                    }
                }
            for (MixedSide side : {MixedSide::Chain, MixedSide::Dual}) {
                MixedComplex<F> mc(wb, side);
                long long lo = side == MixedSide::Chain ? (g ? -W : 0) : -W;
                long long hi = side == MixedSide::Chain ? W : (g ? W : 1);
                const char* tag = side == MixedSide::Chain ? "chain" : "dual";
                for (long long n = lo; n <= hi && ok; ++n) {
                    if (int j = witness_col(mat_compose(f, mc.b(n - 1), mc.b(n))); j >= 0) {
                        ok = false;
                        witness = std::string("b^2 != 0 on ") + tag + " element " +
                                  mixed_basis_str(side, n, j) + " at degree " + std::to_string(n);
                        break;
                    }
                    if (int j = witness_col(mat_compose(f, mc.bb(n + 1), mc.bb(n))); j >= 0) {
                        ok = false;
                        witness = std::string("B^2 != 0 on ") + tag + " element " +
                                  mixed_basis_str(side, n, j) + " at degree " + std::to_string(n);
                        break;
                    }
                    auto anti = mat_add(f, mat_compose(f, mc.b(n + 1), mc.bb(n)),
                                        mat_compose(f, mc.bb(n - 1), mc.b(n)));
                    if (int j = witness_col(anti); j >= 0) {
                        ok = false;
                        witness = std::string("bB + Bb != 0 on ") + tag + " element " +
                                  mixed_basis_str(side, n, j) + " at degree " + std::to_string(n);
                        break;
                    }
                }
            }
            sink.add(label, "differentials", ok,
                     ok ? "D^2, b^2, B^2, bB+Bb on |degree| <= " + std::to_string(W) : witness);
        } catch (const TheoremViolation& e) {
            sink.add(label, "differentials", false, e.what());
        }
    }

    if (want("gerstenhaber")) {
        try {
            ClassOps<F> ops{wb};
            long long plo = g ? -2 : -std::min<long long>(3, W), phi = g ? 2 : 0;
            long long jlo = g ? -1 : -2, jhi = g ? 1 : 0;
            int pairs = 0, triples = 0, fails = 0;
            std::string witness;
            auto record = [&](bool ok, const std::string& what, long long ta, long long tb,
                              long long tc) {
                if (ok) return;
                ++fails;
                if (witness.empty())
                    witness = what + " at degrees (" + std::to_string(ta) + "," +
                              std::to_string(tb) + "," + std::to_string(tc) + ")";
            };
            for (long long ta = plo; ta <= phi; ++ta)
                for (long long tb = plo; tb <= phi; ++tb) {
                    int na = wb.cohomology(Coeff::Self, ta).dim();
                    int nb = wb.cohomology(Coeff::Self, tb).dim();
                    for (int i = 0; i < na; ++i)
                        for (int j = 0; j < nb; ++j) {
                            SparseVec<typename F::Elem> x{{i, f.one()}}, y{{j, f.one()}};
                            ++pairs;
                            auto xy = ops.br(ta, x, tb, y);
                            auto yx = ops.br(tb, y, ta, x);
                            record(sv_axpy(f, xy, sign_of(f, (ta + 1) * (tb + 1)), yx).empty(),
                                   "antisymmetry", ta, tb, 0);
                        }
                }
            for (long long ta = jlo; ta <= jhi; ++ta)
                for (long long tb = jlo; tb <= jhi; ++tb)
                    for (long long tc = jlo; tc <= jhi; ++tc) {
                        int na = wb.cohomology(Coeff::Self, ta).dim();
                        int nb = wb.cohomology(Coeff::Self, tb).dim();
                        int nc = wb.cohomology(Coeff::Self, tc).dim();
                        if (!na || !nb || !nc) continue;
                        SparseVec<typename F::Elem> x{{0, f.one()}}, y{{0, f.one()}},
                            z{{0, f.one()}};
                        ++triples;
                        auto jac_l = ops.br(ta, x, tb + tc + 1, ops.br(tb, y, tc, z));
                        auto jac_r =
                            sv_axpy(f, ops.br(ta + tb + 1, ops.br(ta, x, tb, y), tc, z),
                                    sign_of(f, (ta + 1) * (tb + 1)),
                                    ops.br(tb, y, ta + tc + 1, ops.br(ta, x, tc, z)));
                        record(jac_l == jac_r, "jacobi", ta, tb, tc);
                        auto poi_l = ops.br(ta, x, tb + tc, ops.cup(tb, y, tc, z));
                        auto poi_r =
                            sv_axpy(f, ops.cup(ta + tb + 1, ops.br(ta, x, tb, y), tc, z),
                                    sign_of(f, (ta + 1) * tb),
                                    ops.cup(tb, y, ta + tc + 1, ops.br(ta, x, tc, z)));
                        record(poi_l == poi_r, "poisson", ta, tb, tc);
                    }
            sink.add(label, "gerstenhaber", fails == 0,
                     fails ? witness
                           : std::to_string(pairs) + " pairs, " + std::to_string(triples) +
                                 " triples");
        } catch (const TheoremViolation& e) {
            sink.add(label, "gerstenhaber", false, e.what());
        }
    }

    if (want("bv")) {
        if (!la.pairing) {
            sink.add(label, "bv", true, "skipped: no pairing");
        } else {
            try {
                BvStructure<F> bv(
                    wb, fundamental_class(wb, FrobeniusStructure<F>(la.algebra, *la.pairing)));
                long long lo = g ? -2 : -std::min<long long>(3, W), hi = g ? 2 : 0;
                bool ok = bv.delta_unit().empty();
                std::string witness = ok ? "" : "delta(1) != 0";
                for (long long t = lo; t <= hi && ok; ++t)
                    for (const auto& col : bv.delta(t).cols)
                        if (!bv.delta_class(t + 1, col).empty()) {
                            ok = false;
                            witness = "delta^2 != 0 at degree " + std::to_string(t);
                        }
                int pairs = 0;
                for (long long ta = lo; ta <= hi && ok; ++ta)
                    for (long long tb = lo; tb <= hi && ok; ++tb) {
                        int na = wb.cohomology(Coeff::Self, ta).dim();
                        int nb = wb.cohomology(Coeff::Self, tb).dim();
                        for (int i = 0; i < na && ok; ++i)
                            for (int j = 0; j < nb && ok; ++j) {
                                SparseVec<typename F::Elem> x{{i, f.one()}}, y{{j, f.one()}};
                                ++pairs;
                                auto rep = check_bv_relation(bv, ta, x, tb, y);
                                bool mm = duality_is_module_map(bv, ta, x, tb, y);
                                if (!rep.three_term_holds || !rep.seven_term_holds || !mm) {
                                    ok = false;
                                    witness = std::string(!mm ? "module map" : "delta identity") +
                                              " broken for pair g" + std::to_string(i) + "@" +
                                              std::to_string(ta) + ", g" + std::to_string(j) +
                                              "@" + std::to_string(tb) + "; bracket = " +
                                              coords_str(f, rep.bracket) + ", rhs = " +
                                              coords_str(f, rep.rhs_three);
                                }
                            }
                    }
                sink.add(label, "bv", ok, ok ? std::to_string(pairs) + " pairs" : witness);
            } catch (const TheoremViolation& e) {
                sink.add(label, "bv", false, e.what());
            } catch (const InputError& e) {
                sink.add(label, "bv", false, std::string("fundamental cocycle rejected: ") + e.what());
            }
        }
    }

    if (want("calculus")) {
        try {
            std::mt19937_64 rng(cfg.seed ^ fnv64(label));
            long long xlo = g ? -2 : -std::min<long long>(3, W), xhi = g ? 2 : 0;
            std::vector<long long> xd, cd, pd;
            for (long long t = xlo; t <= xhi; ++t)
                if (wb.cohomology(Coeff::Self, t).dim() > 0) xd.push_back(t);
            for (long long n = (g ? -2 : 0); n <= 2; ++n)
                if (wb.homology(n).dim() > 0) cd.push_back(n);
            for (long long t = -2; t <= (g ? 2 : 0); ++t)
                if (wb.cohomology(Coeff::Dual, t).dim() > 0) pd.push_back(t);
            int done = 0, fails = 0;
            std::string witness;
            for (int trial = 0; trial < cfg.trials && !xd.empty(); ++trial) {
                long long dx = xd[rng() % xd.size()], de = xd[rng() % xd.size()];
                auto cx = random_class(f, rng, wb.cohomology(Coeff::Self, dx).dim());
                auto ce = random_class(f, rng, wb.cohomology(Coeff::Self, de).dim());
                auto fail = [&](const char* side, long long dz) {
                    ++fails;
                    if (witness.empty())
                        witness = std::string(side) + " picture at (dx=" + std::to_string(dx) +
                                  ", de=" + std::to_string(de) + ", dz=" + std::to_string(dz) +
                                  "), x = " +
                                  cochain_str(f, a, ClassOps<F>{wb}.rep(dx, cx), false);
                };
                if (!cd.empty()) {
                    long long dc = cd[rng() % cd.size()];
                    auto cz = random_class(f, rng, wb.homology(dc).dim());
                    ++done;
                    if (!contraction_identity_on_chain(wb, dx, cx, de, ce, dc, cz))
                        fail("chain", dc);
                }
                if (!pd.empty()) {
                    long long dp = pd[rng() % pd.size()];
                    auto cp = random_class(f, rng, wb.cohomology(Coeff::Dual, dp).dim());
                    ++done;
                    if (!contraction_identity_on_dual(wb, dx, cx, de, ce, dp, cp))
                        fail("dual", dp);
                }
            }
            sink.add(label, "calculus", fails == 0,
                     fails ? witness : std::to_string(done) + " random contraction identities");
        } catch (const TheoremViolation& e) {
            sink.add(label, "calculus", false, e.what());
        }
    }

    if (want("cyclic")) {
        try {
            MixedComplex<F> chain(wb, MixedSide::Chain), dual(wb, MixedSide::Dual);
            bool ok = true;
            std::string witness;
            auto exact_window = [&](MixedComplex<F>& mc, CyclicVariant v, int u, long long nlo,
                                    long long nhi, const char* tag) {
                CyclicComplex<F> cc(mc, v, u), below(mc, v, u - 1);
                for (long long n = nlo; n <= nhi && ok; ++n)
                    if (!connes_sequence_exact_at(cc, below, n)) {
                        ok = false;
                        witness = std::string("connes sequence fails at ") + tag + " degree " +
                                  std::to_string(n);
                    }
            };
            if (!g) {
                exact_window(chain, CyclicVariant::Cyclic, 2, 1, 3, "chain/cyclic");
                exact_window(dual, CyclicVariant::Negative, 2, -1, 1, "dual/negative");
            } else {
                exact_window(dual, CyclicVariant::Cyclic, 3, 1, 4, "dual/cyclic");
                exact_window(chain, CyclicVariant::Negative, 3, -2, 0, "chain/negative");
            }
            // the u-series variant stabilizes on the bounded side of the theory
            auto& bounded = g ? chain : dual;
            auto stab = compute_cyclic(bounded, CyclicVariant::Negative, g ? -4 : 0, 4, 4);
            for (auto& [n, inf] : stab)
                if (!inf.stable && ok) {
                    ok = false;
                    witness = "negative variant not stabilized at degree " + std::to_string(n);
                }
            sink.add(label, "cyclic", ok, ok ? "exactness + negative stabilization" : witness);
        } catch (const TheoremViolation& e) {
            sink.add(label, "cyclic", false, e.what());
        }
    }
}

JobResult cmd_verify(const JobConfig& cfg) {
    Report r(cfg);
    emit_options(r, cfg);
    CheckSink sink;
    std::vector<std::string> stems =
        cfg.algebra.empty() ? kCorpus : std::vector<std::string>{cfg.algebra};
    for (const auto& stem : stems) {
        auto path = resolve_algebra_path(stem);
        auto adoc = read_presentation_file(path);
        int ch = presentation_characteristic(adoc);
        if (ch == 0) {
            RationalField f;
            verify_fixture(f, adoc, stem, cfg, sink);
        } else {
            PrimeField f(static_cast<std::uint64_t>(ch));
            verify_fixture(f, adoc, stem, cfg, sink);
        }
    }
    r.tab << sink.tab.str();
    r.tab << "verify: " << sink.total << " checks, " << sink.failed << " failed\n";
    r.doc["checks"] = std::move(sink.checks);
    r.doc["summary"] = {{"checks", sink.total}, {"failed", sink.failed}};
    return {sink.failed ? 2 : 0, r.finish()};
}

// ------------------------------------------------------------------ dispatch

std::string cache_key(const JobConfig& cfg) {
    ojson k;
    k["schema"] = kSchemaVersion;
    k["command"] = cfg.command;
    k["coeff"] = cfg.coeff;
    k["max_degree"] = cfg.max_degree;
    k["word_cutoff"] = cfg.word_cutoff ? ojson(*cfg.word_cutoff) : ojson(nullptr);
    k["u_trunc"] = cfg.u_trunc;
    k["variant"] = cfg.variant;
    k["suite"] = cfg.suite;
    k["trials"] = cfg.trials;
    k["seed"] = cfg.seed;
    k["format"] = cfg.format;
    k["mutate_sign"] = cfg.mutate_sign;
    if (cfg.command == "verify" && cfg.algebra.empty()) {
        ojson hs = ojson::array();
        for (const auto& stem : kCorpus) hs.push_back(file_content_hash(resolve_algebra_path(stem)));
        k["algebra_hash"] = std::move(hs);
    } else {
        k["algebra_hash"] = file_content_hash(resolve_algebra_path(cfg.algebra));
    }
    if (!cfg.m_cocycle.empty()) k["m_cocycle_hash"] = file_content_hash(cfg.m_cocycle);
    return fnv1a_hex(k.dump());
}

JobResult dispatch(const JobConfig& cfg) {
    if (cfg.command == "verify") return cmd_verify(cfg);
    auto path = resolve_algebra_path(cfg.algebra);
    auto adoc = read_presentation_file(path);
    int ch = presentation_characteristic(adoc);
    auto run = [&](const auto& f) -> JobResult {
        if (cfg.command == "hh") return cmd_hh(f, adoc, path, cfg);
        if (cfg.command == "bv") return cmd_bv(f, adoc, path, cfg);
        if (cfg.command == "cyclic") return cmd_cyclic(f, adoc, path, cfg);
        throw InputError("unknown command '" + cfg.command + "'");
    };
    if (ch == 0) {
        RationalField f;
        return run(f);
    }
    PrimeField f(static_cast<std::uint64_t>(ch));
    return run(f);
}

}  // namespace

JobResult run_job(const JobConfig& cfg) {
    if (cfg.command != "hh" && cfg.command != "bv" && cfg.command != "cyclic" &&
        cfg.command != "verify")
        throw InputError("unknown command '" + cfg.command + "'");
    if (cfg.command != "verify" && cfg.algebra.empty())
        throw InputError("--algebra is required for '" + cfg.command + "'");
    if (cfg.max_degree < 0) throw InputError("--max-degree must be nonnegative");
    if (cfg.trials < 0) throw InputError("--trials must be nonnegative");
    parse_coeff(cfg.coeff);
    parse_variant(cfg.variant);
    if (cfg.format != "table" && cfg.format != "structured")
        throw InputError("--format must be 'table' or 'structured'");

    std::string cache_dir = cfg.cache_dir;
    if (cache_dir.empty())
        if (const char* env = std::getenv("BVHH_CACHE_DIR")) cache_dir = env;
    std::optional<DiskCache> cache;
    std::string key;
    if (!cache_dir.empty()) {
        cache.emplace(cache_dir);
        key = cache_key(cfg);
        if (auto hit = cache->get(key))
            return {(*hit)["exit_code"].get<int>(), (*hit)["text"].get<std::string>()};
    }
    JobResult res = dispatch(cfg);
    if (cache)
        cache->put(key, nlohmann::json{{"exit_code", res.exit_code}, {"text", res.text}});
    return res;
}

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    JobConfig cfg;
    CLI::App app{"exact Hochschild/cyclic (co)homology workbench for finite-dimensional "
                 "algebras, with verified Gerstenhaber and Batalin-Vilkovisky structure"};
    app.require_subcommand(1);

    auto add_common = [&cfg](CLI::App* c, bool algebra_required) {
        auto* alg = c->add_option("--algebra", cfg.algebra,
                                  "presentation: a path, or a name under $BVHH_FIXTURES or "
                                  "./fixtures");
        if (algebra_required) alg->required();
        c->add_option("--coeff", cfg.coeff, "coefficients: self = A, dual = A^")
            ->check(CLI::IsMember({"self", "dual"}))
            ->capture_default_str();
        c->add_option("--max-degree", cfg.max_degree, "half-width of the degree window")
            ->capture_default_str();
        c->add_option("--word-cutoff", cfg.word_cutoff, "truncate bar words at this length");
        c->add_option("--u-trunc", cfg.u_trunc, "u-power window order")->capture_default_str();
        c->add_option("--variant", cfg.variant, "cyclic theory flavor")
            ->check(CLI::IsMember({"cyclic", "negative", "periodic"}))
            ->capture_default_str();
        c->add_option("--suite", cfg.suite, "verify: which battery")
            ->check(CLI::IsMember(
                {"all", "differentials", "gerstenhaber", "bv", "calculus", "cyclic"}))
            ->capture_default_str();
        c->add_option("--trials", cfg.trials, "verify: random homogeneous trials per fixture")
            ->capture_default_str();
        c->add_option("--seed", cfg.seed, "seed for randomized checks")->capture_default_str();
        c->add_option("--cache-dir", cfg.cache_dir,
                      "result cache directory (default $BVHH_CACHE_DIR)");
        c->add_option("--format", cfg.format, "report format")
            ->check(CLI::IsMember({"table", "structured"}))
            ->capture_default_str();
        c->add_option("--mutate-sign", cfg.mutate_sign, "")->group("");
    };

    add_common(app.add_subcommand("hh", "Hochschild cohomology dimensions and representatives"),
               true);
    auto* bv = app.add_subcommand(
        "bv", "duality, Delta, bracket, and the Batalin-Vilkovisky identity battery");
    add_common(bv, true);
    bv->add_option("--m-cocycle", cfg.m_cocycle,
                   "explicit fundamental cocycle file (instead of the pairing)");
    add_common(app.add_subcommand(
                   "cyclic", "cyclic/negative/periodic groups, Connes sequence, Lie bracket"),
               true);
    add_common(app.add_subcommand("verify", "assertion suites over the fixture corpus"), false);

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e, out, err);
        return rc == 0 ? 0 : 3;
    }
    cfg.command = app.get_subcommands().front()->get_name();

    try {
        auto res = run_job(cfg);
        out << res.text;
        return res.exit_code;
    } catch (const InputError& e) {
        err << "input error: " << e.what() << "\n";
        return 3;
    } catch (const TheoremViolation& e) {
        err << "theorem violation: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace bvhh
