#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bvhh/algebra.hpp"

namespace bvhh {

using json = nlohmann::json;

/* Loading of algebra presentations:
     { field: {char}, basis: [{name, degree?}], unit, products: [{left, right,
       result: [{name, coeff}]}], augmentation?: [{name, coeff}], pairing?: [[..]] }
   Scalars are integers or strings ("-2", "3/4"); products not listed are zero;
   products against the unit are implied. A supplied augmentation that is not
   "coefficient of the unit" triggers a basis change u_i = e_i - eps(e_i) 1 so
   the normalized complexes can always split off the unit along the basis. */

inline json read_presentation_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open algebra file '" + path + "'");
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw InputError("malformed presentation '" + path + "': " + e.what());
    }
    return doc;
}

/* --algebra accepts a path, a name under $BVHH_FIXTURES, or a name under
   ./fixtures; ".json" is appended when missing. */
inline std::string resolve_algebra_path(const std::string& arg) {
    namespace fs = std::filesystem;
    std::vector<std::string> candidates{arg, arg + ".json"};
    if (const char* env = std::getenv("BVHH_FIXTURES")) {
        candidates.push_back(std::string(env) + "/" + arg);
        candidates.push_back(std::string(env) + "/" + arg + ".json");
    }
    candidates.push_back("fixtures/" + arg);
    candidates.push_back("fixtures/" + arg + ".json");
    for (const auto& c : candidates)
        if (fs::exists(c) && fs::is_regular_file(c)) return c;
    throw InputError("cannot resolve algebra '" + arg + "' (tried the path, $BVHH_FIXTURES, ./fixtures)");
}

inline int presentation_characteristic(const json& doc) {
    if (!doc.contains("field") || !doc["field"].contains("char") ||
        !doc["field"]["char"].is_number_integer())
        throw InputError("presentation needs field.char");
    long long c = doc["field"]["char"].get<long long>();
    if (c < 0) throw InputError("field.char must be 0 or a prime");
    return static_cast<int>(c);
}

template <ScalarField F>
typename F::Elem parse_scalar(const F& f, const json& v) {
    if (v.is_number_integer()) return f.from_int(v.get<long long>());
    if (v.is_string()) return f.parse(v.get<std::string>());
    throw InputError("scalar entries must be integers or strings, got " + v.dump());
}

template <ScalarField F>
struct LoadedAlgebra {
    GradedAlgebra<F> algebra;
    std::optional<std::vector<std::vector<typename F::Elem>>> pairing;
};

template <ScalarField F>
LoadedAlgebra<F> load_algebra(const F& f, const json& doc) {
    using Elem = typename F::Elem;
    using Vec = SparseVec<Elem>;

    for (const auto& [key, value] : doc.items()) {
        (void)value;
        if (key != "field" && key != "basis" && key != "unit" && key != "products" &&
            key != "augmentation" && key != "pairing" && key != "name" && key != "comment")
            throw InputError("unknown presentation key '" + key + "'");
    }
    if (presentation_characteristic(doc) != static_cast<int>(f.characteristic()))
        throw InputError("characteristic mismatch between presentation and requested field");
    if (!doc.contains("basis") || !doc["basis"].is_array() || doc["basis"].empty())
        throw InputError("presentation needs a nonempty basis array");

    std::vector<std::string> names;
    std::vector<long long> degrees;
    std::map<std::string, int> index;
    for (const auto& b : doc["basis"]) {
        if (!b.contains("name") || !b["name"].is_string())
            throw InputError("each basis entry needs a name");
        std::string nm = b["name"].get<std::string>();
        if (index.count(nm)) throw InputError("duplicate basis name '" + nm + "'");
        index[nm] = static_cast<int>(names.size());
        names.push_back(nm);
        degrees.push_back(b.contains("degree") ? b["degree"].get<long long>() : 0);
    }
    const int n = static_cast<int>(names.size());

    if (!doc.contains("unit") || !doc["unit"].is_string() || !index.count(doc["unit"].get<std::string>()))
        throw InputError("presentation needs a unit naming a basis element");
    const int unit = index.at(doc["unit"].get<std::string>());

    auto lookup = [&](const json& v, const char* what) {
        if (!v.is_string() || !index.count(v.get<std::string>()))
            throw InputError(std::string(what) + " must name a basis element, got " + v.dump());
        return index.at(v.get<std::string>());
    };

    std::vector<std::vector<Vec>> products(n, std::vector<Vec>(n));
    std::vector<std::vector<bool>> given(n, std::vector<bool>(n, false));
    if (doc.contains("products")) {
        for (const auto& p : doc["products"]) {
            int i = lookup(p.at("left"), "products.left");
            int j = lookup(p.at("right"), "products.right");
            if (given[i][j])
                throw InputError("product " + names[i] + " * " + names[j] + " listed twice");
            given[i][j] = true;
            std::map<int, Elem> acc;
            for (const auto& t : p.at("result")) {
                int k = lookup(t.at("name"), "products.result.name");
                Elem c = parse_scalar(f, t.at("coeff"));
                acc[k] = f.add(acc.count(k) ? acc[k] : f.zero(), c);
            }
            products[i][j] = sv_from_map(f, acc);
        }
    }
    for (int j = 0; j < n; ++j) {
        Vec ej{{j, f.one()}};
        if (!given[unit][j]) products[unit][j] = ej;
        if (!given[j][unit]) products[j][unit] = ej;
    }

    std::optional<std::vector<Elem>> eps;
    if (doc.contains("augmentation")) {
        std::vector<Elem> e(n, f.zero());
        for (const auto& t : doc["augmentation"])
            e[lookup(t.at("name"), "augmentation.name")] = parse_scalar(f, t.at("coeff"));
        if (!f.eq(e[unit], f.one()))
            throw InputError("augmentation must send the unit to 1");
        for (int i = 0; i < n; ++i)
            if (!f.is_zero(e[i]) && i != unit && degrees[i] != 0)
                throw InputError("augmentation must vanish on nonzero degrees (" + names[i] + ")");
        eps = std::move(e);
    }

    std::optional<std::vector<std::vector<Elem>>> pairing;
    if (doc.contains("pairing")) {
        std::vector<std::vector<Elem>> p;
        for (const auto& row : doc["pairing"]) {
            std::vector<Elem> r;
            for (const auto& v : row) r.push_back(parse_scalar(f, v));
            p.push_back(std::move(r));
        }
        pairing = std::move(p);
    }

    bool needs_rebase = false;
    if (eps)
        for (int i = 0; i < n; ++i)
            if (i != unit && !f.is_zero((*eps)[i])) needs_rebase = true;

    if (needs_rebase) {
        // new basis u_i = e_i - eps_i 1 for i != unit; to new coordinates:
        // sum c_k e_k = sum_{k != unit} c_k u_k + (c_unit + sum c_k eps_k) 1
        auto to_new = [&](const Vec& old) {
            std::map<int, Elem> acc;
            for (const auto& [k, c] : old) {
                if (k == unit) acc[unit] = f.add(acc.count(unit) ? acc[unit] : f.zero(), c);
                else {
                    acc[k] = f.add(acc.count(k) ? acc[k] : f.zero(), c);
                    acc[unit] = f.add(acc.count(unit) ? acc[unit] : f.zero(), f.mul(c, (*eps)[k]));
                }
            }
            return sv_from_map(f, acc);
        };
        std::vector<std::vector<Vec>> np(n, std::vector<Vec>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                // u_i u_j = e_i e_j - eps_j e_i - eps_i e_j + eps_i eps_j 1
                Elem li = (i == unit) ? f.zero() : (*eps)[i];
                Elem lj = (j == unit) ? f.zero() : (*eps)[j];
                Vec v = products[i][j];
                v = sv_axpy(f, v, f.neg(lj), Vec{{i, f.one()}});
                v = sv_axpy(f, v, f.neg(li), Vec{{j, f.one()}});
                v = sv_axpy(f, v, f.mul(li, lj), Vec{{unit, f.one()}});
                np[i][j] = to_new(v);
            }
        if (pairing) {
            std::vector<std::vector<Elem>> q(n, std::vector<Elem>(n));
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    Elem li = (i == unit) ? f.zero() : (*eps)[i];
                    Elem lj = (j == unit) ? f.zero() : (*eps)[j];
                    Elem v = (*pairing)[i][j];
                    v = f.sub(v, f.mul(lj, (*pairing)[i][unit]));
                    v = f.sub(v, f.mul(li, (*pairing)[unit][j]));
                    v = f.add(v, f.mul(f.mul(li, lj), (*pairing)[unit][unit]));
                    q[i][j] = v;
                }
            pairing = std::move(q);
        }
        products = std::move(np);
    }

    GradedAlgebra<F> alg(f, std::move(names), std::move(degrees), unit, std::move(products));
    if (!eps && !alg.reduced_part_is_ideal())
        throw InputError("the non-unit basis span is not an ideal; supply an augmentation "
                         "to fix the splitting");
    return LoadedAlgebra<F>{std::move(alg), std::move(pairing)};
}

} // namespace bvhh
