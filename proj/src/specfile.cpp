#include "algd/specfile.hpp"

#include <chrono>
#include <map>
#include <sstream>
#include <variant>

#include "json.hpp"

namespace algd {

using nlohmann::json;

std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

namespace {

struct Objects {
    Field field = Field::rationals();
    std::map<std::string, std::vector<std::vector<std::size_t>>> groups;
    std::map<std::string, HopfAlgebra> hopfs;
    std::map<std::string, FDAlgebra> algebras;
    std::map<std::string, Matrix> matrices;
    std::map<std::string, TensorFunctional> functionals;
    std::map<std::string, BuiltAlgebroid> algebroids;
    std::map<std::string, WeylResult> weyls;
    std::map<std::string, SelfCrossedResult> selfcrossed;
    std::map<std::string, HopfGaloisData> galois;
    std::map<std::string, ESResult> es;
    std::map<std::string, TransmutationResult> transmutations;
    std::map<std::string, KillingResult> killings;
    std::map<std::string, BicrossResult> bicross;
    std::map<std::string, CoquasiCMResult> coquasi;
    std::map<std::string, CQTStructure> cqts;
};

Scalar parse_scalar(const json& v, const Field& f) {
    if (v.is_number_integer()) return Scalar::integer(v.get<long>(), f);
    if (v.is_string()) return Scalar::parse(v.get<std::string>(), f);
    throw Error("ParseError", "scalar must be an integer or a string");
}

Matrix parse_matrix(const json& v, const Field& f) {
    if (!v.contains("entries")) throw Error("ParseError", "matrix needs entries");
    const json& rows = v["entries"];
    std::size_t r = rows.size();
    std::size_t c = r ? rows[0].size() : 0;
    if (v.contains("rows") && v["rows"].get<std::size_t>() != r)
        throw Error("ShapeMismatch", "declared rows do not match the entries");
    if (v.contains("cols") && v["cols"].get<std::size_t>() != c)
        throw Error("ShapeMismatch", "declared cols do not match the entries");
    Matrix m(r, c, f);
    for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c) throw Error("ShapeMismatch", "ragged matrix");
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = parse_scalar(rows[i][j], f);
    }
    return m;
}

const Matrix& need_matrix(const Objects& obj, const std::string& name) {
    auto it = obj.matrices.find(name);
    if (it == obj.matrices.end()) throw Error("UnknownReference", "matrix '" + name + "'");
    return it->second;
}

const HopfAlgebra& need_hopf(const Objects& obj, const std::string& name) {
    auto it = obj.hopfs.find(name);
    if (it == obj.hopfs.end()) throw Error("UnknownReference", "hopf algebra '" + name + "'");
    return it->second;
}

const FDAlgebra& need_algebra(const Objects& obj, const std::string& name) {
    auto it = obj.algebras.find(name);
    if (it != obj.algebras.end()) return it->second;
    auto ith = obj.hopfs.find(name);
    if (ith != obj.hopfs.end()) return ith->second.alg;
    throw Error("UnknownReference", "algebra '" + name + "'");
}

const TensorFunctional& need_functional(const Objects& obj, const std::string& name) {
    auto it = obj.functionals.find(name);
    if (it == obj.functionals.end()) throw Error("UnknownReference", "functional '" + name + "'");
    return it->second;
}

TensorFunctional trivial_gamma(const HopfAlgebra& h, const FDAlgebra& b) {
    TensorFunctional g;
    g.legs = 2;
    std::size_t nh = h.dim();
    g.mat = Matrix(b.dim, nh * nh, b.field);
    for (std::size_t i = 0; i < nh; ++i)
        for (std::size_t j = 0; j < nh; ++j) {
            SparseVec v = b.unit.scaled(h.coa.counit[i] * h.coa.counit[j]);
            for (auto& [k, c] : v.terms()) g.mat.at(k, i * nh + j) = c;
        }
    return g;
}

json laws_to_json(const Report& rep) {
    json out = json::array();
    for (auto& l : rep.laws) {
        json e;
        e["law"] = l.law;
        e["pass"] = l.pass;
        if (!l.pass) e["witness"] = l.witness;
        out.push_back(e);
    }
    return out;
}

// Finds the bialgebroid owned by any construction under the given name.
struct FoundAlgebroid {
    const BuiltAlgebroid* built = nullptr;
    const WeylResult* weyl = nullptr;
};

FoundAlgebroid find_algebroid(const Objects& obj, const std::string& name) {
    FoundAlgebroid fa;
    if (auto it = obj.algebroids.find(name); it != obj.algebroids.end()) fa.built = &it->second;
    else if (auto iw = obj.weyls.find(name); iw != obj.weyls.end()) {
        fa.built = &iw->second.alg;
        fa.weyl = &iw->second;
    } else if (auto is = obj.selfcrossed.find(name); is != obj.selfcrossed.end())
        fa.built = &is->second.plain;
    else if (auto ie = obj.es.find(name); ie != obj.es.end())
        fa.built = &ie->second.alg;
    else if (auto itr = obj.transmutations.find(name); itr != obj.transmutations.end())
        fa.built = &itr->second.alg;
    if (!fa.built) throw Error("UnknownReference", "algebroid '" + name + "'");
    return fa;
}

void build_object(Objects& obj, const std::string& name, const json& spec) {
    std::string type = spec.at("type").get<std::string>();
    Field f = obj.field;
    if (type == "group") {
        std::vector<std::vector<std::size_t>> table;
        for (auto& row : spec.at("table")) table.push_back(row.get<std::vector<std::size_t>>());
        check_group_table(table);
        obj.groups[name] = table;
    } else if (type == "group_algebra") {
        obj.hopfs[name] = group_algebra(obj.groups.at(spec.at("group").get<std::string>()), f);
    } else if (type == "function_algebra") {
        obj.hopfs[name] = function_algebra(obj.groups.at(spec.at("group").get<std::string>()), f);
    } else if (type == "dual_hopf") {
        obj.hopfs[name] = dual_hopf(need_hopf(obj, spec.at("hopf").get<std::string>())).first;
    } else if (type == "matrix") {
        obj.matrices[name] = parse_matrix(spec, f);
    } else if (type == "functional") {
        TensorFunctional t;
        t.legs = spec.value("legs", 2);
        t.mat = parse_matrix(spec, f);
        obj.functionals[name] = t;
    } else if (type == "trivial_gamma") {
        obj.functionals[name] =
            trivial_gamma(need_hopf(obj, spec.at("hopf").get<std::string>()),
                          need_algebra(obj, spec.at("base").get<std::string>()));
    } else if (type == "cqt") {
        CQTStructure r;
        r.r = need_functional(obj, spec.at("r").get<std::string>());
        r.r_inv = need_functional(obj, spec.at("r_inv").get<std::string>());
        obj.cqts[name] = r;
    } else if (type == "weyl") {
        obj.weyls[name] = weyl_algebroid(need_hopf(obj, spec.at("hopf").get<std::string>()),
                                         spec.value("check_simplicity", false));
    } else if (type == "connes_moscovici") {
        obj.algebroids[name] = connes_moscovici(
            need_hopf(obj, spec.at("hopf").get<std::string>()),
            need_algebra(obj, spec.at("base").get<std::string>()),
            need_matrix(obj, spec.at("action").get<std::string>()));
    } else if (type == "cm_cocycle") {
        obj.algebroids[name] = cm_cocycle(need_hopf(obj, spec.at("hopf").get<std::string>()),
                                          need_algebra(obj, spec.at("base").get<std::string>()),
                                          need_matrix(obj, spec.at("action").get<std::string>()),
                                          need_functional(obj, spec.at("gamma").get<std::string>()));
    } else if (type == "self_crossed") {
        obj.selfcrossed[name] = self_crossed_algebroid(need_hopf(obj, spec.at("hopf").get<std::string>()));
    } else if (type == "cocycle_smash") {
        obj.algebroids[name] = cocycle_smash(need_hopf(obj, spec.at("hopf").get<std::string>()),
                                             need_algebra(obj, spec.at("base").get<std::string>()),
                                             need_matrix(obj, spec.at("action").get<std::string>()),
                                             need_functional(obj, spec.at("gamma").get<std::string>()));
    } else if (type == "hopf_galois") {
        obj.galois[name] = hopf_galois(need_algebra(obj, spec.at("total").get<std::string>()),
                                       need_hopf(obj, spec.at("hopf").get<std::string>()),
                                       need_matrix(obj, spec.at("coaction").get<std::string>()));
    } else if (type == "es_algebroid") {
        auto it = obj.galois.find(spec.at("galois").get<std::string>());
        if (it == obj.galois.end()) throw Error("UnknownReference", "galois data");
        obj.es[name] = es_algebroid(it->second);
    } else if (type == "transmutation") {
        auto it = obj.cqts.find(spec.at("cqt").get<std::string>());
        if (it == obj.cqts.end()) throw Error("UnknownReference", "cqt structure");
        obj.transmutations[name] =
            transmutation(need_hopf(obj, spec.at("hopf").get<std::string>()), it->second);
    } else if (type == "killing_form") {
        auto itr = obj.transmutations.find(spec.at("transmutation").get<std::string>());
        auto itw = obj.weyls.find(spec.at("weyl").get<std::string>());
        auto itc = obj.cqts.find(spec.at("cqt").get<std::string>());
        if (itr == obj.transmutations.end() || itw == obj.weyls.end() || itc == obj.cqts.end())
            throw Error("UnknownReference", "killing form inputs");
        obj.killings[name] =
            killing_form(need_hopf(obj, spec.at("hopf").get<std::string>()), itc->second,
                         itr->second, itw->second);
    } else if (type == "bicrossproduct") {
        obj.bicross[name] = bicrossproduct_transversal(
            obj.groups.at(spec.at("group").get<std::string>()),
            spec.at("subgroup").get<std::vector<std::size_t>>(),
            spec.at("transversal").get<std::vector<std::size_t>>(), f);
    } else if (type == "coquasi_es") {
        auto it = obj.galois.find(spec.at("galois").get<std::string>());
        if (it == obj.galois.end()) throw Error("UnknownReference", "galois data");
        obj.coquasi[name] = coquasi_es(it->second, need_functional(obj, spec.at("phi").get<std::string>()));
    } else if (type == "coquasi_cm") {
        auto it = obj.bicross.find(spec.at("bicrossproduct").get<std::string>());
        if (it == obj.bicross.end()) throw Error("UnknownReference", "bicrossproduct data");
        obj.coquasi[name] = coquasi_cm(it->second.h, it->second.base, it->second.measuring,
                                       it->second.gamma, it->second.gamma_inv);
    } else {
        throw Error("ParseError", "unknown object type '" + type + "'");
    }
}

json run_task(Objects& obj, const json& task, const RunOptions& opts) {
    json out;
    std::string op = task.at("op").get<std::string>();
    out["op"] = op;
    if (task.contains("target")) out["target"] = task["target"];
    std::uint64_t limit = opts.limit ? opts.limit : default_enumeration_limit();
    if (task.contains("limit")) limit = task["limit"].get<std::uint64_t>();

    if (op == "check") {
        std::string name = task.at("target").get<std::string>();
        // Coquasi and bicrossproduct targets carry their own validation.
        if (auto it = obj.coquasi.find(name); it != obj.coquasi.end()) {
            out["status"] = it->second.validation.pass() ? "pass" : "fail";
            out["laws"] = laws_to_json(it->second.validation);
            return out;
        }
        if (auto it = obj.bicross.find(name); it != obj.bicross.end()) {
            out["status"] = it->second.validation.pass() ? "pass" : "fail";
            out["laws"] = laws_to_json(it->second.validation);
            return out;
        }
        if (auto it = obj.galois.find(name); it != obj.galois.end()) {
            out["status"] = it->second.validation.pass() ? "pass" : "fail";
            out["laws"] = laws_to_json(it->second.validation);
            return out;
        }
        if (auto it = obj.killings.find(name); it != obj.killings.end()) {
            out["status"] = it->second.rep.pass() ? "pass" : "fail";
            out["laws"] = laws_to_json(it->second.rep);
            out["factorisable"] = it->second.factorisable;
            return out;
        }
        if (auto it = obj.hopfs.find(name); it != obj.hopfs.end()) {
            Report rep = it->second.check();
            out["status"] = rep.pass() ? "pass" : "fail";
            out["laws"] = laws_to_json(rep);
            return out;
        }
        FoundAlgebroid fa = find_algebroid(obj, name);
        out["status"] = fa.built->validation.pass() ? "pass" : "fail";
        out["laws"] = laws_to_json(fa.built->validation);
        return out;
    }
    if (op == "hopf") {
        FoundAlgebroid fa = find_algebroid(obj, task.at("target").get<std::string>());
        out["left"] = fa.built->hd.left_ok;
        out["anti_left"] = fa.built->hd.anti_ok;
        bool want_left = task.value("expect_left", true);
        bool want_anti = task.value("expect_anti", true);
        out["status"] = (fa.built->hd.left_ok == want_left && fa.built->hd.anti_ok == want_anti)
                            ? "pass"
                            : "fail";
        return out;
    }
    if (op == "enumerate") {
        std::string kind = task.at("kind").get<std::string>();
        std::size_t count = 0;
        if (kind == "algebra-automorphism") {
            const FDAlgebra& a = need_algebra(obj, task.at("target").get<std::string>());
            count = enumerate_algebra_autos(a, nullptr, limit).size();
        } else if (kind == "weyl-alpha") {
            auto it = obj.weyls.find(task.at("target").get<std::string>());
            if (it == obj.weyls.end()) throw Error("UnknownReference", "weyl target");
            auto [dual, pairing] = dual_hopf(it->second.yd.h);
            (void)pairing;
            count = enumerate_counital_invertibles(dual.alg, dual.coa.counit, limit).size();
        } else if (kind == "action-cocycle") {
            auto it = obj.weyls.find(task.at("target").get<std::string>());
            if (it != obj.weyls.end()) {
                count = enumerate_action_cocycles(it->second.yd, limit).size();
            } else {
                auto itr = obj.transmutations.find(task.at("target").get<std::string>());
                if (itr == obj.transmutations.end())
                    throw Error("UnknownReference", "action-cocycle target");
                count = enumerate_action_cocycles(itr->second.yd, limit).size();
            }
        } else {
            FoundAlgebroid fa = find_algebroid(obj, task.at("target").get<std::string>());
            const LeftBialgebroid& l = fa.built->l;
            if (kind == "bisection-left")
                count = enumerate_bisections(l, true, limit, opts.parallel).size();
            else if (kind == "bisection-right")
                count = enumerate_bisections(l, false, limit, opts.parallel).size();
            else if (kind == "ext-cochain")
                count = enumerate_ext_cochains(l, limit, opts.parallel).size();
            else if (kind == "two-cocycle")
                count = enumerate_two_cocycles(l, limit, opts.parallel).size();
            else if (kind == "in-c1")
                count = enumerate_in_c1(l, fa.built->q, limit).size();
            else if (kind == "in-cocycle")
                count = enumerate_in_cocycles(l, fa.built->q, limit).size();
            else
                throw Error("ParseError", "unknown enumeration kind '" + kind + "'");
        }
        out["kind"] = kind;
        out["count"] = count;
        if (task.contains("expect")) {
            out["status"] = count == task["expect"].get<std::size_t>() ? "pass" : "fail";
        } else {
            out["status"] = "pass";
        }
        return out;
    }
    if (op == "two_group") {
        std::string name = task.at("target").get<std::string>();
        auto itw = obj.weyls.find(name);
        if (itw == obj.weyls.end()) throw Error("UnknownReference", "two-group target");
        const auto& w = itw->second;
        auto bis = enumerate_bisections(w.alg.l, false, limit, opts.parallel);
        auto [dual, pairing] = dual_hopf(w.yd.h);
        (void)pairing;
        auto autos = enumerate_algebra_autos(dual.alg, &dual.coa.counit, limit);
        std::vector<AlgebroidMorphism> morphs;
        for (auto& phi : autos) morphs.push_back(dict_weyl_auto(w.yd.h, w, phi));
        Report rep = two_group_check(w.alg.l, w.alg.hd, bis, morphs);
        out["bisections"] = bis.size();
        out["automorphisms"] = morphs.size();
        out["status"] = rep.pass() ? "pass" : "fail";
        out["laws"] = laws_to_json(rep);
        return out;
    }
    if (op == "twist") {
        FoundAlgebroid fa = find_algebroid(obj, task.at("target").get<std::string>());
        const LeftBialgebroid& l = fa.built->l;
        Report all;
        all.subject = "twist";
        auto c1 = enumerate_ext_cochains(l, limit, opts.parallel);
        std::size_t twisted = 0;
        for (auto& u : c1) {
            TwoCocycle du = coboundary(l, u);
            all.merge(check_two_cocycle(l, du));
            BuiltAlgebroid tw = twist(l, du);
            all.merge(tw.validation);
            AlgebroidMorphism ad{ad_gauge_map(l, u), Matrix::identity(l.nb(), l.field())};
            all.merge(check_morphism(l, tw.l, ad));
            ++twisted;
        }
        out["cochains"] = c1.size();
        out["twisted"] = twisted;
        out["status"] = all.pass() ? "pass" : "fail";
        if (!all.pass()) out["laws"] = laws_to_json(all);
        return out;
    }
    if (op == "dual") {
        FoundAlgebroid fa = find_algebroid(obj, task.at("target").get<std::string>());
        const LeftBialgebroid& l = fa.built->l;
        Report all;
        all.subject = "dual";
        RightDualResult rd = right_dual(l);
        all.merge(check_bialgebroid(rd.dual));
        all.merge(check_dual_pairing(l, rd));
        all.merge(biduality_check(l));
        all.merge(dual_hopf_check(l, fa.built->q, fa.built->hd, rd));
        out["dual_dim"] = rd.dual.n();
        out["status"] = all.pass() ? "pass" : "fail";
        out["laws"] = laws_to_json(all);
        return out;
    }
    if (op == "dict") {
        std::string kind = task.at("kind").get<std::string>();
        Report all;
        all.subject = "dict";
        if (kind == "weyl") {
            auto itw = obj.weyls.find(task.at("target").get<std::string>());
            if (itw == obj.weyls.end()) throw Error("UnknownReference", "weyl target");
            const auto& w = itw->second;
            auto [dual, pairing] = dual_hopf(w.yd.h);
            (void)pairing;
            auto alphas = enumerate_counital_invertibles(dual.alg, dual.coa.counit, limit);
            bool ok = true;
            for (auto& alpha : alphas) {
                auto rho = dict_weyl_alpha_to_rho(w.yd.h, w, alpha);
                if (!(dict_weyl_rho_to_alpha(w.yd.h, w, rho) == alpha)) ok = false;
                Matrix right = dict_action_rho_to_right_bisection(w.yd, rho);
                if (!check_bisection(w.alg.l, right, false).pass()) ok = false;
            }
            auto rights = enumerate_bisections(w.alg.l, false, limit, opts.parallel);
            all.record("alpha set matches the bisection count", alphas.size() == rights.size(),
                       std::to_string(alphas.size()) + " vs " + std::to_string(rights.size()));
            all.record("round trips are identities", ok, "");
            out["alphas"] = alphas.size();
        } else {
            throw Error("ParseError", "unknown dict kind '" + kind + "'");
        }
        out["status"] = all.pass() ? "pass" : "fail";
        out["laws"] = laws_to_json(all);
        return out;
    }
    throw Error("ParseError", "unknown op '" + op + "'");
}

bool category_matches(const std::string& category, const std::string& op) {
    if (category == "all") return true;
    if (category == "check") return op == "check" || op == "hopf" || op == "two_group" || op == "dict";
    if (category == "enumerate") return op == "enumerate";
    if (category == "twist") return op == "twist";
    if (category == "dual") return op == "dual";
    return false;
}

}  // namespace

std::string run_spec(const std::string& json_text, const RunOptions& opts, bool* all_passed) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const std::exception& e) {
        throw Error("ParseError", e.what());
    }
    Objects obj;
    if (doc.contains("field")) {
        const json& fd = doc["field"];
        if (fd.contains("prime")) obj.field = Field::prime(fd["prime"].get<std::uint64_t>());
        else if (fd.value("rational", false)) obj.field = Field::rationals();
        else throw Error("ParseError", "field must declare prime or rational");
    }
    json report;
    report["tool"] = "algd 1.0";
    {
        std::ostringstream os;
        os << std::hex << fnv1a64(json_text);
        report["input_digest"] = "fnv1a64:" + os.str();
    }
    report["field"] = obj.field.str();
    bool passed = true;
    json objects = json::array();
    if (doc.contains("objects")) {
        // Objects are declared as an ordered array of {name, ...} entries so
        // that construction order (and hence the report) is deterministic.
        for (auto& entry : doc["objects"]) {
            json oj;
            std::string name = entry.at("name").get<std::string>();
            oj["name"] = name;
            oj["type"] = entry.at("type").get<std::string>();
            auto t0 = std::chrono::steady_clock::now();
            try {
                build_object(obj, name, entry);
                oj["status"] = "built";
            } catch (const Error& e) {
                oj["status"] = "error";
                oj["error"] = std::string(e.what());
                passed = false;
            }
            if (opts.timing) {
                auto t1 = std::chrono::steady_clock::now();
                oj["timing_ms"] =
                    std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
            }
            objects.push_back(oj);
        }
    }
    report["objects"] = objects;
    json tasks = json::array();
    if (!opts.build_only && doc.contains("tasks")) {
        for (auto& task : doc["tasks"]) {
            std::string op = task.at("op").get<std::string>();
            if (!category_matches(opts.category, op)) continue;
            auto t0 = std::chrono::steady_clock::now();
            json tj;
            try {
                tj = run_task(obj, task, opts);
            } catch (const Error& e) {
                tj["op"] = op;
                if (task.contains("target")) tj["target"] = task["target"];
                tj["status"] = "error";
                tj["error"] = std::string(e.what());
            }
            if (tj["status"] != "pass") passed = false;
            if (opts.timing) {
                auto t1 = std::chrono::steady_clock::now();
                tj["timing_ms"] =
                    std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
            }
            tasks.push_back(tj);
        }
    }
    report["tasks"] = tasks;
    report["all_passed"] = passed;
    if (all_passed) *all_passed = passed;
    return report.dump(2) + "\n";
}

std::string report_to_text(const std::string& report_json) {
    json doc = json::parse(report_json);
    std::ostringstream os;
    os << doc["tool"].get<std::string>() << " report (" << doc["field"].get<std::string>()
       << ", digest " << doc["input_digest"].get<std::string>() << ")\n";
    for (auto& oj : doc["objects"]) {
        os << "object " << oj["name"].get<std::string>() << " [" << oj["type"].get<std::string>()
           << "]: " << oj["status"].get<std::string>();
        if (oj.contains("error")) os << " (" << oj["error"].get<std::string>() << ")";
        if (oj.contains("timing_ms")) os << " [" << oj["timing_ms"].get<long>() << " ms]";
        os << "\n";
    }
    for (auto& tj : doc["tasks"]) {
        os << "task " << tj["op"].get<std::string>();
        if (tj.contains("target")) os << " " << tj["target"].get<std::string>();
        if (tj.contains("kind")) os << " (" << tj["kind"].get<std::string>() << ")";
        std::string status = tj["status"].get<std::string>();
        os << ": " << (status == "pass" ? "PASS" : status == "fail" ? "FAIL" : "ERROR");
        if (tj.contains("count")) os << " count=" << tj["count"].get<std::size_t>();
        if (tj.contains("error")) os << " (" << tj["error"].get<std::string>() << ")";
        if (tj.contains("laws") && status == "fail") {
            for (auto& law : tj["laws"])
                if (!law["pass"].get<bool>())
                    os << "\n  failed: " << law["law"].get<std::string>() << " at "
                       << law.value("witness", std::string());
        }
        if (tj.contains("timing_ms")) os << " [" << tj["timing_ms"].get<long>() << " ms]";
        os << "\n";
    }
    os << (doc["all_passed"].get<bool>() ? "ALL TASKS PASS" : "FAILURES PRESENT") << "\n";
    return os.str();
}

}  // namespace algd
