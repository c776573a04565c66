// tau-loop: command line front end for the loop affine-Virasoro engine.
//
// One job per invocation. A job is either a subcommand with flags or a JSON
// job file passed via --spec. Reports go to stdout (or --out) as readable
// text, or as JSON with --json; JSON reports carry the schema tag
// "tau-loop-report/1", serialize every rational as a "p/q" string, and are
// byte-for-byte deterministic for a fixed job.
//
// Exit codes: 0 success, 1 identity violation, 2 input error.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "acceptance_suite.hpp"
#include "tau_loop/central_ops.hpp"

namespace {

using nlohmann::ordered_json;
using namespace tauloop;

// ---- low-level parsing ---------------------------------------------------

std::string trimmed(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

Scalar parse_scalar(const std::string& field, const std::string& text) {
    std::string t = trimmed(text);
    if (t.empty()) throw InputError(field + ": empty rational");
    try {
        return Scalar(t);
    } catch (const std::exception&) {
        throw InputError(field + ": cannot read '" + t + "' as a rational (use p or p/q)");
    }
}

std::vector<Scalar> parse_scalar_list(const std::string& field, const std::string& text) {
    std::vector<Scalar> out;
    for (const std::string& part : split(text, ','))
        out.push_back(parse_scalar(field, part));
    return out;
}

int parse_int(const std::string& field, const std::string& text) {
    std::string t = trimmed(text);
    try {
        std::size_t used = 0;
        int v = std::stoi(t, &used);
        if (used != t.size()) throw std::invalid_argument(t);
        return v;
    } catch (const std::exception&) {
        throw InputError(field + ": cannot read '" + t + "' as an integer");
    }
}

Box parse_box(const std::string& field, const std::string& text) {
    auto parts = split(text, ',');
    if (parts.size() != 2) throw InputError(field + ": expected P,Q");
    Box box{parse_int(field, parts[0]), parse_int(field, parts[1])};
    if (box.p_max < 0 || box.q_max < 0) throw InputError(field + ": bounds must be nonnegative");
    return box;
}

SparseVec parse_coords(const std::string& field, const std::string& text, int dim) {
    std::vector<Scalar> vals = parse_scalar_list(field, text);
    if (static_cast<int>(vals.size()) != dim)
        throw InputError(field + ": expected " + std::to_string(dim) +
                         " comma-separated coordinates, got " + std::to_string(vals.size()));
    return SparseVec::from_dense(vals);
}

// ---- algebra and functional specs ---------------------------------------

CommAlgebra parse_algebra(const std::string& spec) {
    std::string s = trimmed(spec);
    if (s == "scalar") return scalar_algebra();
    auto with_prefix = [&](const char* p) -> std::optional<std::string> {
        std::string pref(p);
        if (s.rfind(pref, 0) == 0) return s.substr(pref.size());
        return std::nullopt;
    };
    try {
        if (auto rest = with_prefix("jet:")) return jet_algebra(parse_int("algebra", *rest));
        if (auto rest = with_prefix("points:"))
            return points_algebra(parse_scalar_list("algebra", *rest));
        if (auto rest = with_prefix("poly:"))
            return poly_mod_algebra(parse_scalar_list("algebra", *rest));
        if (auto rest = with_prefix("laurent:"))
            return laurent_mod_algebra(parse_scalar_list("algebra", *rest));
    } catch (const BadParams& e) {
        throw InputError(std::string("algebra: ") + e.what());
    }
    throw InputError("algebra: unknown spec '" + s +
                     "' (expected scalar, jet:N, points:z1,z2,..., poly:c0,c1,..., or "
                     "laurent:c0,c1,...)");
}

struct Job {
    std::string command;
    std::string algebra = "scalar";
    std::string psi, psi_h, psi_K, psi_L0;
    std::string box;  // empty: per-command default
    bool json_out = false;
    std::string out_path;
    std::vector<int> js, ks;
    std::string a_str, b_str;
    int reach = 2;
    int nmax = 6;
    int triples = 300;
    std::vector<std::string> gens;
    std::string elem, coeff, op, at = "0,0:0";
    std::string module_kind = "verma";
    std::string z_str, lam_str, c_str, d0_str = "0,0";
};

// Compact form lam=L,c=C,d0=D (keys lam / lambda, c / level, d0); needs the
// one-dimensional coefficient algebra. Multi-dimensional algebras take the
// three dense rows instead.
PsiFunctional parse_psi(const Job& job, const CommAlgebra& a) {
    bool compact = !job.psi.empty();
    bool rows = !job.psi_h.empty() || !job.psi_K.empty() || !job.psi_L0.empty();
    if (compact && rows)
        throw InputError("psi: give either the compact form or the three rows, not both");
    if (compact) {
        if (a.dim != 1)
            throw InputError("psi: the compact form applies to the scalar algebra only; "
                             "give --psi-h, --psi-K and --psi-L0 rows of length " +
                             std::to_string(a.dim));
        Scalar lam(0), lev(0), d0(0);
        for (const std::string& part : split(job.psi, ',')) {
            auto kv = split(part, '=');
            if (kv.size() != 2) throw InputError("psi: expected key=value, got '" + part + "'");
            std::string key = trimmed(kv[0]);
            if (key == "lam" || key == "lambda" || key == "\xce\xbb")
                lam = parse_scalar("psi." + key, kv[1]);
            else if (key == "c" || key == "level")
                lev = parse_scalar("psi." + key, kv[1]);
            else if (key == "d0")
                d0 = parse_scalar("psi.d0", kv[1]);
            else
                throw InputError("psi: unknown key '" + key + "' (lam, c, d0)");
        }
        return PsiFunctional::scalar(lam, lev, d0);
    }
    if (rows) {
        if (job.psi_h.empty() || job.psi_K.empty() || job.psi_L0.empty())
            throw InputError("psi: all of --psi-h, --psi-K, --psi-L0 are required together");
        auto row = [&](const char* field, const std::string& text) {
            std::vector<Scalar> vals = parse_scalar_list(field, text);
            if (static_cast<int>(vals.size()) != a.dim)
                throw InputError(std::string(field) + ": expected " + std::to_string(a.dim) +
                                 " values for " + a.name);
            return vals;
        };
        return PsiFunctional(row("psi-h", job.psi_h), row("psi-K", job.psi_K),
                             row("psi-L0", job.psi_L0));
    }
    throw InputError("psi: required (--psi lam=..,c=..,d0=.. or the three row flags)");
}

Box job_box(const Job& job, const char* fallback) {
    return parse_box("box", job.box.empty() ? fallback : job.box);
}

SparseVec job_coeff(const std::string& field, const std::string& text, const CommAlgebra& a) {
    if (text.empty()) return a.unit;
    return parse_coords(field, text, a.dim);
}

std::unique_ptr<ModuleBase> make_module(const Job& job, const LoopAlgebra& tau,
                                        const PsiFunctional& psi, Box box) {
    if (job.module_kind == "verma") return std::make_unique<VermaModule>(tau, psi, box);
    if (job.module_kind == "irreducible")
        return std::make_unique<IrreducibleModule>(tau, psi, box);
    throw InputError("module: expected verma or irreducible, got '" + job.module_kind + "'");
}

// ---- rendering -----------------------------------------------------------

ordered_json coords_json(const SparseVec& v) {
    ordered_json arr = ordered_json::array();
    for (const Scalar& c : v.dense()) arr.push_back(scalar_str(c));
    return arr;
}

std::string combo_str(const CommAlgebra& a, const SparseVec& v) {
    if (v.is_zero()) return "0";
    std::string out;
    for (const auto& [i, c] : v.entries()) {
        std::string label = a.labels[i];
        std::string term = c == 1 ? label
                         : c == -1 ? "-" + label
                                   : scalar_str(c) + "*" + label;
        if (out.empty())
            out = term;
        else if (term[0] == '-')
            out += " - " + term.substr(1);
        else
            out += " + " + term;
    }
    return out;
}

ordered_json module_vec_json(const ModuleBase& m, const ModuleVec& v) {
    ordered_json arr = ordered_json::array();
    for (const auto& [o, coords] : v.parts()) {
        ordered_json layer;
        layer["offset"] = {o.p, o.q};
        ordered_json terms = ordered_json::array();
        for (const auto& [i, c] : coords.entries())
            terms.push_back({{"label", m.label(o, i)}, {"coeff", scalar_str(c)}});
        layer["terms"] = std::move(terms);
        arr.push_back(std::move(layer));
    }
    return arr;
}

ordered_json report_head(const Job& job) {
    ordered_json r;
    r["schema"] = "tau-loop-report/1";
    r["command"] = job.command;
    return r;
}

bool scalar_array(const ordered_json& j) {
    for (const auto& item : j)
        if (item.is_structured()) return false;
    return true;
}

void render_text(const ordered_json& j, std::ostream& os, int indent) {
    std::string pad(indent, ' ');
    if (j.is_object()) {
        for (const auto& [key, val] : j.items()) {
            if (val.is_structured() && !(val.is_array() && scalar_array(val))) {
                os << pad << key << ":";
                if (val.empty()) {
                    os << (val.is_array() ? " []" : " {}") << "\n";
                } else {
                    os << "\n";
                    render_text(val, os, indent + 2);
                }
            } else {
                os << pad << key << ": ";
                render_text(val, os, 0);
                os << "\n";
            }
        }
    } else if (j.is_array()) {
        if (scalar_array(j)) {
            os << "[";
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) os << ", ";
                render_text(j[i], os, 0);
            }
            os << "]";
        } else {
            for (const auto& item : j) {
                os << pad << "-";
                if (item.is_object() && !item.empty()) {
                    bool first = true;
                    for (const auto& [key, val] : item.items()) {
                        if (val.is_structured() && !(val.is_array() && scalar_array(val))) {
                            os << (first ? " " : pad + "  ") << key << ":";
                            if (val.empty()) {
                                os << (val.is_array() ? " []" : " {}") << "\n";
                            } else {
                                os << "\n";
                                render_text(val, os, indent + 4);
                            }
                        } else {
                            os << (first ? " " : pad + "  ") << key << ": ";
                            render_text(val, os, 0);
                            os << "\n";
                        }
                        first = false;
                    }
                } else {
                    os << " ";
                    render_text(item, os, 0);
                    os << "\n";
                }
            }
        }
    } else if (j.is_string()) {
        os << j.get<std::string>();
    } else {
        os << j.dump();
    }
}

int emit(const Job& job, const ordered_json& report, int code) {
    std::string text;
    if (job.json_out) {
        text = report.dump(2) + "\n";
    } else {
        std::ostringstream os;
        render_text(report, os, 0);
        text = os.str();
    }
    if (!job.out_path.empty()) {
        std::ofstream f(job.out_path, std::ios::binary);
        if (!f) throw InputError("out: cannot open '" + job.out_path + "' for writing");
        f << text;
    } else {
        std::cout << text;
    }
    return code;
}

// ---- commands ------------------------------------------------------------

int cmd_validate_algebra(const Job& job) {
    CommAlgebra a = parse_algebra(job.algebra);
    AlgebraValidation v = validate(a);

    LoopAlgebra tau(a);
    auto pool = acceptance::detail::symbol_pool(a.dim, 3);
    acceptance::detail::Rng rng(0x51ED2700u + static_cast<unsigned long long>(a.dim));
    int bracket_triples = 0;
    std::vector<std::string> bracket_violations;
    auto note = [&](const std::string& msg) {
        if (bracket_violations.size() < 8) bracket_violations.push_back(msg);
    };
    int pool_size = static_cast<int>(pool.size());
    for (int n = 0; n < job.triples; ++n) {
        const TauSymbol& s1 = pool[rng.below(pool_size)];
        const TauSymbol& s2 = pool[rng.below(pool_size)];
        const TauSymbol& s3 = pool[rng.below(pool_size)];
        TauElement anti = tau.bracket_symbols(s1, s2);
        anti.axpy(Scalar(1), tau.bracket_symbols(s2, s1));
        if (!anti.terms.empty())
            note("antisymmetry fails on " + symbol_str(s1, tau.lie) + ", " +
                 symbol_str(s2, tau.lie));
        if (!tau.jacobi_probe(s1, s2, s3).terms.empty())
            note("jacobi fails on " + symbol_str(s1, tau.lie) + ", " +
                 symbol_str(s2, tau.lie) + ", " + symbol_str(s3, tau.lie));
        ++bracket_triples;
    }

    ordered_json r = report_head(job);
    r["algebra"] = a.name;
    r["structure"] = {{"ok", v.ok},
                      {"checked_triples", v.checked_triples},
                      {"problems", v.problems}};
    r["bracket"] = {{"triples", bracket_triples}, {"violations", bracket_violations}};
    bool bad = !v.ok || !bracket_violations.empty();
    r["violations"] = bad ? ordered_json::array({"algebra or bracket identity failed"})
                          : ordered_json::array();
    return emit(job, r, bad ? 1 : 0);
}

IdealBasis job_ideal(const Job& job, const CommAlgebra& a) {
    if (job.gens.empty()) return zero_ideal(a);
    std::vector<SparseVec> gens;
    for (std::size_t i = 0; i < job.gens.size(); ++i)
        gens.push_back(parse_coords("gen[" + std::to_string(i) + "]", job.gens[i], a.dim));
    return ideal_from_generators(a, gens);
}

int cmd_radical(const Job& job) {
    CommAlgebra a = parse_algebra(job.algebra);
    IdealBasis ideal = job_ideal(job, a);
    IdealBasis rad = radical(a, ideal);

    ordered_json r = report_head(job);
    r["algebra"] = a.name;
    r["ideal_rank"] = ideal.rank();
    r["radical_rank"] = rad.rank();
    ordered_json rows = ordered_json::array();
    for (const SparseVec& row : rad.space.rows())
        rows.push_back({{"coords", coords_json(row)}, {"element", combo_str(a, row)}});
    r["radical_basis"] = std::move(rows);
    r["violations"] = ordered_json::array();
    return emit(job, r, 0);
}

int cmd_crt(const Job& job) {
    CommAlgebra a = parse_algebra(job.algebra);
    CrtSplit s = crt_split(a);

    ordered_json r = report_head(job);
    r["algebra"] = a.name;
    r["factors"] = s.factors();
    ordered_json idem = ordered_json::array();
    for (const SparseVec& e : s.idempotents)
        idem.push_back({{"coords", coords_json(e)}, {"element", combo_str(a, e)}});
    r["idempotents"] = std::move(idem);
    ordered_json pv = ordered_json::array();
    for (const auto& row : s.point_values) {
        ordered_json jr = ordered_json::array();
        for (const Scalar& x : row) jr.push_back(scalar_str(x));
        pv.push_back(std::move(jr));
    }
    r["point_values"] = std::move(pv);
    r["violations"] = ordered_json::array();
    return emit(job, r, 0);
}

int cmd_dims(const Job& job) {
    CommAlgebra a = parse_algebra(job.algebra);
    LoopAlgebra tau(a);
    PsiFunctional psi = parse_psi(job, a);
    Box box = job_box(job, "4,4");
    std::unique_ptr<ModuleBase> m;
    if (job.command == "verma-dims")
        m = std::make_unique<VermaModule>(tau, psi, box);
    else
        m = std::make_unique<IrreducibleModule>(tau, psi, box);

    ordered_json r = report_head(job);
    r["algebra"] = a.name;
    r["box"] = {box.p_max, box.q_max};
    ordered_json table = ordered_json::array();
    long long total = 0;
    for (BiDegree o : m->window_offsets()) {
        int d = m->dim(o);
        total += d;
        table.push_back({{"offset", {o.p, o.q}}, {"dim", d}});
    }
    r["table"] = std::move(table);
    r["total"] = total;
    r["violations"] = ordered_json::array();
    return emit(job, r, 0);
}

TauElement parse_elem(const std::string& field, const std::string& text, const LoopAlgebra& tau,
                      const SparseVec& coeff) {
    std::string s = trimmed(text);
    std::string name = s;
    int t_pow = 0;
    auto open = s.find('(');
    if (open != std::string::npos) {
        if (s.back() != ')') throw InputError(field + ": expected name(power), got '" + s + "'");
        name = trimmed(s.substr(0, open));
        t_pow = parse_int(field, s.substr(open + 1, s.size() - open - 2));
    }
    if (name == "X") return current_elem(tau, Sl2Basis::X, t_pow, coeff);
    if (name == "h" || name == "H") return current_elem(tau, Sl2Basis::H, t_pow, coeff);
    if (name == "Y") return current_elem(tau, Sl2Basis::Y, t_pow, coeff);
    if (name == "L") return vir_elem(tau, t_pow, coeff);
    if (name == "K") {
        if (open != std::string::npos)
            throw InputError(field + ": K takes no power; the coefficient selects the slot");
        return central_elem(tau, coeff);
    }
    throw InputError(field + ": unknown generator '" + name + "' (X, h, Y, L, K)");
}

std::pair<BiDegree, int> parse_at(const std::string& text, const ModuleBase& m) {
    auto head_tail = split(text, ':');
    if (head_tail.size() != 2) throw InputError("at: expected p,q:index");
    auto pq = split(head_tail[0], ',');
    if (pq.size() != 2) throw InputError("at: expected p,q:index");
    BiDegree o{parse_int("at", pq[0]), parse_int("at", pq[1])};
    int idx = parse_int("at", head_tail[1]);
    if (!offset_in_staircase(o, m.box()))
        throw InputError("at: offset (" + std::to_string(o.p) + "," + std::to_string(o.q) +
                         ") is outside the window");
    int d = m.dim(o);
    if (idx < 0 || idx >= d)
        throw InputError("at: index " + std::to_string(idx) + " out of range (layer has " +
                         std::to_string(d) + " basis vectors)");
    return {o, idx};
}

int cmd_apply(const Job& job) {
    CommAlgebra a = parse_algebra(job.algebra);
    LoopAlgebra tau(a);
    PsiFunctional psi = parse_psi(job, a);
    Box box = job_box(job, "2,2");
    std::unique_ptr<ModuleBase> m = make_module(job, tau, psi, box);

    if (job.elem.empty() == job.op.empty())
        throw InputError("apply: give exactly one of --elem or --op");
    auto [o, idx] = parse_at(job.at, *m);
    ModuleVec v;
    v.add(o, idx, Scalar(1), m->dim(o));

    ordered_json r = report_head(job);
    r["algebra"] = a.name;
    r["module"] = job.module_kind;
    r["box"] = {box.p_max, box.q_max};
    r["input"] = {{"offset", {o.p, o.q}}, {"index", idx}, {"label", m->label(o, idx)}};

    ModuleVec w;
    if (!job.elem.empty()) {
        SparseVec coeff = job_coeff("coeff", job.coeff, a);
        TauElement e = parse_elem("elem", job.elem, tau, coeff);
        r["element"] = element_str(e, tau.lie);
        w = m->act(e, v);
    } else {
        SparseVec ca = job_coeff("a", job.a_str, a);
        SparseVec cb = job_coeff("b", job.b_str, a);
        std::string s = trimmed(job.op);
        if (s == "omega") {
            r["operator"] = "Omega(" + combo_str(a, ca) + "; " + combo_str(a, cb) + ")";
            w = omega_apply(*m, ca, cb, v);
        } else if (s.rfind("T:", 0) == 0 || (s.rfind("T(", 0) == 0 && s.back() == ')')) {
            int j = s[1] == ':' ? parse_int("op", s.substr(2))
                                : parse_int("op", s.substr(2, s.size() - 3));
            r["operator"] = "T_" + std::to_string(j) + "(" + combo_str(a, ca) + "; " +
                            combo_str(a, cb) + ")";
            w = t_apply(*m, j, ca, cb, v);
        } else {
            throw InputError("op: expected omega or T:j, got '" + s + "'");
        }
    }
    r["result"] = module_vec_json(*m, w);
    r["result_zero"] = w.is_zero();
    r["violations"] = ordered_json::array();
    return emit(job, r, 0);
}

int cmd_singular(const Job& job) {
    CommAlgebra a = parse_algebra(job.algebra);
    LoopAlgebra tau(a);
    PsiFunctional psi = parse_psi(job, a);
    Box box = job_box(job, "2,2");
    VermaModule m(tau, psi, box);

    ordered_json r = report_head(job);
    r["algebra"] = a.name;
    r["box"] = {box.p_max, box.q_max};
    ordered_json hits = ordered_json::array();
    int total = 0;
    for (BiDegree o : m.window_offsets()) {
        SubspaceBasis s = singular_vectors(m, o);
        if (s.rank() == 0) continue;
        total += s.rank();
        ordered_json vecs = ordered_json::array();
        for (const SparseVec& row : s.rows()) {
            ordered_json terms = ordered_json::array();
            for (const auto& [i, c] : row.entries())
                terms.push_back({{"label", m.label(o, i)}, {"coeff", scalar_str(c)}});
            vecs.push_back({{"terms", std::move(terms)}});
        }
        hits.push_back({{"offset", {o.p, o.q}}, {"rank", s.rank()}, {"vectors", std::move(vecs)}});
    }
    r["offsets"] = std::move(hits);
    r["total_rank"] = total;
    r["violations"] = ordered_json::array();
    return emit(job, r, 0);
}

int cmd_check_central(const Job& job) {
    CommAlgebra a = parse_algebra(job.algebra);
    LoopAlgebra tau(a);
    PsiFunctional psi = parse_psi(job, a);
    Box box = job_box(job, "3,3");
    std::unique_ptr<ModuleBase> m = make_module(job, tau, psi, box);
    SparseVec ca = job_coeff("a", job.a_str, a);
    SparseVec cb = job_coeff("b", job.b_str, a);
    std::vector<int> js = job.js.empty() ? std::vector<int>{0} : job.js;

    ordered_json r = report_head(job);
    r["algebra"] = a.name;
    r["module"] = job.module_kind;
    r["box"] = {box.p_max, box.q_max};
    r["a"] = combo_str(a, ca);
    r["b"] = combo_str(a, cb);
    ordered_json results = ordered_json::array();
    bool all_central = true;
    for (int j : js) {
        CentralityReport rep = affine_centrality_check(*m, j, ca, cb, job.reach);
        all_central = all_central && rep.central;
        results.push_back({{"j", j},
                           {"central", rep.central},
                           {"checks", rep.checks},
                           {"skipped", rep.skipped},
                           {"violations", rep.violations}});
    }
    r["results"] = std::move(results);
    r["violations"] = all_central
                          ? ordered_json::array()
                          : ordered_json::array({"operator fails to commute; see results"});
    return emit(job, r, all_central ? 0 : 1);
}

int cmd_check_bracket(const Job& job) {
    CommAlgebra a = parse_algebra(job.algebra);
    LoopAlgebra tau(a);
    PsiFunctional psi = parse_psi(job, a);
    Box box = job_box(job, "2,4");
    std::unique_ptr<ModuleBase> m = make_module(job, tau, psi, box);
    SparseVec ca = job_coeff("a", job.a_str, a);
    SparseVec cb = job_coeff("b", job.b_str, a);
    std::vector<int> ks = job.ks.empty() ? std::vector<int>{1, 2} : job.ks;
    std::vector<int> js = job.js.empty() ? std::vector<int>{1, -1, 2, -2} : job.js;

    ordered_json r = report_head(job);
    r["algebra"] = a.name;
    r["module"] = job.module_kind;
    r["box"] = {box.p_max, box.q_max};
    r["a"] = combo_str(a, ca);
    r["b"] = combo_str(a, cb);

    // Away from j+k = 0 the commutator with L_k is the pure mode shift
    // (j-k) T_{j+k}; probed per stored basis vector where representable.
    int checks = 0, skipped = 0;
    std::vector<std::string> regular_violations;
    for (int k : ks) {
        for (int j : js) {
            if (j + k == 0 || j == 0) continue;
            TauElement lk = vir_elem(tau, k, a.unit);
            for (BiDegree o : m->window_offsets()) {
                for (int i = 0; i < m->dim(o); ++i) {
                    ModuleVec v;
                    v.add(o, i, Scalar(1), m->dim(o));
                    try {
                        ModuleVec lhs = m->act(lk, t_apply(*m, j, ca, cb, v));
                        lhs.axpy(Scalar(-1), t_apply(*m, j, ca, cb, m->act(lk, v)));
                        ModuleVec rhs = t_apply(*m, j + k, ca, cb, v);
                        rhs.scale(Scalar(j - k));
                        if (lhs == rhs) {
                            ++checks;
                        } else if (regular_violations.size() < 8) {
                            regular_violations.push_back(
                                "k=" + std::to_string(k) + " j=" + std::to_string(j) + " at " +
                                m->label(o, i));
                        }
                    } catch (const TruncationError&) {
                        ++skipped;
                    }
                }
            }
        }
    }
    r["regular"] = {{"k", ks},
                    {"j", js},
                    {"checks", checks},
                    {"skipped", skipped},
                    {"violations", regular_violations}};

    // At j = -k the bracket picks up a scalar from the two central channels
    // K(ab) and K(a)K(b); measured over a family of functionals derived from
    // the given one by shifting the level and L0 rows, then compared with the
    // closed form. A mismatch is reported, not patched.
    std::vector<PsiFunctional> family;
    family.push_back(psi);
    for (int shift : {1, 2}) {
        std::vector<Scalar> K = psi.K, L0 = psi.L0;
        for (Scalar& x : K) x += shift;
        for (Scalar& x : L0) x += shift;
        family.emplace_back(psi.h, std::move(K), std::move(L0));
    }
    std::vector<BiDegree> probes = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
    ordered_json boundary = ordered_json::array();
    bool boundary_ok = true;
    for (int k : ks) {
        if (k == 0) continue;
        BoundaryMeasurement bm =
            boundary_scalar_measurement(tau, k, ca, cb, family, box, probes);
        bool ok = bm.residual_diagonal && bm.consistent && (!bm.determined || bm.matches_stated);
        boundary_ok = boundary_ok && ok;
        boundary.push_back({{"k", k},
                            {"measured_gamma1", scalar_str(bm.gamma1)},
                            {"measured_gamma2", scalar_str(bm.gamma2)},
                            {"stated_gamma1", scalar_str(bm.stated_gamma1)},
                            {"stated_gamma2", scalar_str(bm.stated_gamma2)},
                            {"residual_diagonal", bm.residual_diagonal},
                            {"determined", bm.determined},
                            {"consistent", bm.consistent},
                            {"matches_stated", bm.matches_stated},
                            {"vectors", bm.vectors},
                            {"skipped", bm.skipped},
                            {"violations", bm.violations}});
    }
    r["boundary"] = std::move(boundary);
    bool bad = !regular_violations.empty() || !boundary_ok;
    r["violations"] = bad ? ordered_json::array({"bracket identity failed; see sections"})
                          : ordered_json::array();
    return emit(job, r, bad ? 1 : 0);
}

int cmd_check_integrable(const Job& job) {
    CommAlgebra a = parse_algebra(job.algebra);
    LoopAlgebra tau(a);
    PsiFunctional psi = parse_psi(job, a);
    Box box = job_box(job, "6,2");
    std::unique_ptr<ModuleBase> m = make_module(job, tau, psi, box);

    DominanceReport dom = dominant_integral(psi, a);
    ordered_json r = report_head(job);
    r["algebra"] = a.name;
    r["module"] = job.module_kind;
    r["box"] = {box.p_max, box.q_max};
    ordered_json lam = ordered_json::array(), lev = ordered_json::array();
    for (const Scalar& x : dom.lambdas) lam.push_back(scalar_str(x));
    for (const Scalar& x : dom.levels) lev.push_back(scalar_str(x));
    r["dominance"] = {{"dominant", dom.dominant},
                      {"vanishes_on_radical", dom.vanishes_on_radical},
                      {"components", dom.components},
                      {"lambdas", std::move(lam)},
                      {"levels", std::move(lev)},
                      {"reason", dom.reason}};

    ordered_json probes = ordered_json::array();
    bool violated = false;
    const std::pair<const char*, TauSymbol> tries[] = {
        {"Y(t^0)", TauSymbol::current(Sl2Basis::Y, 0)},
        {"X(t^-1)", TauSymbol::current(Sl2Basis::X, -1)}};
    for (const auto& [name, sym] : tries) {
        ordered_json p;
        p["generator"] = name;
        try {
            NilpotencyResult res = nilpotency_probe(*m, sym, m->highest_vector(), job.nmax);
            p["nilpotent"] = res.nilpotent;
            if (res.nilpotent)
                p["power"] = res.power;
            else
                p["open_at"] = job.nmax;
            if (dom.dominant && job.module_kind == "irreducible" && !res.nilpotent)
                violated = true;
        } catch (const TruncationError& e) {
            p["inconclusive"] = std::string("window too small: ") + e.what();
        }
        probes.push_back(std::move(p));
    }
    r["probes"] = std::move(probes);
    r["violations"] = violated ? ordered_json::array({"dominant functional with a non-nilpotent "
                                                      "string; integrability failed"})
                               : ordered_json::array();
    return emit(job, r, violated ? 1 : 0);
}

int cmd_check_annihilation(const Job& job) {
    CommAlgebra a = parse_algebra(job.algebra);
    PsiFunctional psi = parse_psi(job, a);
    Box box = job_box(job, "3,3");
    IdealBasis ideal = job_ideal(job, a);
    AnnihilationReport rep = check_cofinite_annihilation(psi, a, ideal, box, job.reach);

    ordered_json r = report_head(job);
    r["algebra"] = a.name;
    r["box"] = {box.p_max, box.q_max};
    r["ideal_rank"] = ideal.rank();
    r["hypothesis_ok"] = rep.hypothesis_ok;
    r["annihilated"] = rep.annihilated;
    r["checks"] = rep.checks;
    r["detail"] = rep.detail;
    bool bad = rep.hypothesis_ok && !rep.annihilated;
    r["violations"] = bad ? ordered_json(rep.violations) : ordered_json::array();
    return emit(job, r, bad ? 1 : 0);
}

int cmd_example31(const Job& job) {
    auto pair_of = [&](const char* field, const std::string& text) {
        std::vector<Scalar> v = parse_scalar_list(field, text);
        if (v.size() != 2) throw InputError(std::string(field) + ": expected two rationals");
        return v;
    };
    std::vector<Scalar> z = pair_of("z", job.z_str.empty() ? "1,2" : job.z_str);
    std::vector<Scalar> lam = pair_of("lam", job.lam_str.empty() ? "2,3" : job.lam_str);
    std::vector<Scalar> lev = pair_of("c", job.c_str.empty() ? "1,2" : job.c_str);
    std::vector<Scalar> d0 = pair_of("d0", job.d0_str);
    Box box = job_box(job, "2,2");

    PsiFunctional psi1 = PsiFunctional::scalar(lam[0], lev[0], d0[0]);
    PsiFunctional psi2 = PsiFunctional::scalar(lam[1], lev[1], d0[1]);
    EvaluationTensorModule m(psi1, psi2, z[0], z[1], box);
    const CommAlgebra& a = m.algebra().coeffs;

    // The idempotent supported at each point, located by evaluating t.
    CrtSplit s = crt_split(a);
    SparseVec t_coords = SparseVec::unit(a.dim, 1);
    int i1 = s.point(0, t_coords) == z[0] ? 0 : 1;
    SparseVec P1 = s.idempotents[i1], P2 = s.idempotents[1 - i1];

    ordered_json r = report_head(job);
    r["z"] = {scalar_str(z[0]), scalar_str(z[1])};
    r["lambda"] = {scalar_str(lam[0]), scalar_str(lam[1])};
    r["level"] = {scalar_str(lev[0]), scalar_str(lev[1])};
    r["d0"] = {scalar_str(d0[0]), scalar_str(d0[1])};
    r["box"] = {box.p_max, box.q_max};
    r["P1"] = combo_str(a, P1);
    r["P2"] = combo_str(a, P2);

    bool bad = false;
    ordered_json ops = ordered_json::array();
    for (int j : {-1, -2}) {
        SingularGeneration gen = singular_generation(m, j, P1, P2);
        if (gen.nonzero && !gen.affine_singular) bad = true;
        ops.push_back({{"operator", "T_" + std::to_string(j) + "(P1,P2)"},
                       {"image", module_vec_json(m, gen.vector)},
                       {"nonzero", gen.nonzero},
                       {"killed_by_affine_raising", gen.affine_singular},
                       {"surviving_generators", gen.surviving_generators}});
    }
    r["operators"] = std::move(ops);
    r["violations"] = bad ? ordered_json::array({"image of the top vector is not singular"})
                          : ordered_json::array();
    return emit(job, r, bad ? 1 : 0);
}

int cmd_selftest(const Job& job) {
    std::vector<acceptance::CriterionResult> results = acceptance::run_all();
    bool all = true;
    for (const auto& res : results) all = all && res.pass;

    if (job.json_out || !job.out_path.empty()) {
        ordered_json r = report_head(job);
        ordered_json arr = ordered_json::array();
        for (const auto& res : results)
            arr.push_back({{"number", res.number},
                           {"name", res.name},
                           {"pass", res.pass},
                           {"detail", res.detail}});
        r["criteria"] = std::move(arr);
        r["all_pass"] = all;
        r["violations"] = ordered_json::array();
        for (const auto& res : results)
            if (!res.pass) r["violations"].push_back("criterion " + std::to_string(res.number));
        return emit(job, r, all ? 0 : 1);
    }
    for (const auto& res : results)
        std::printf("criterion %2d: %s  %s (%s)\n", res.number, res.pass ? "PASS" : "FAIL",
                    res.name.c_str(), res.detail.c_str());
    std::printf("%s: %zu/%zu identities hold\n", all ? "OK" : "FAILED",
                results.size() - static_cast<std::size_t>(std::count_if(
                                     results.begin(), results.end(),
                                     [](const auto& res) { return !res.pass; })),
                results.size());
    return all ? 0 : 1;
}

int run_job(const Job& job) {
    if (job.command == "validate-algebra") return cmd_validate_algebra(job);
    if (job.command == "radical") return cmd_radical(job);
    if (job.command == "crt") return cmd_crt(job);
    if (job.command == "verma-dims" || job.command == "irreducible-dims") return cmd_dims(job);
    if (job.command == "apply") return cmd_apply(job);
    if (job.command == "singular") return cmd_singular(job);
    if (job.command == "check-central") return cmd_check_central(job);
    if (job.command == "check-bracket") return cmd_check_bracket(job);
    if (job.command == "check-integrable") return cmd_check_integrable(job);
    if (job.command == "check-annihilation") return cmd_check_annihilation(job);
    if (job.command == "example31") return cmd_example31(job);
    if (job.command == "selftest") return cmd_selftest(job);
    throw InputError("unknown command '" + job.command + "'");
}

// ---- job files -----------------------------------------------------------

// Flat JSON object: "command" plus the long-option names with scalar, array,
// or nested values. Rationals must be strings or integers (never floats).
std::string spec_atom(const std::string& field, const nlohmann::json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    throw InputError("spec." + field + ": expected a string or an integer (rationals are "
                     "\"p/q\" strings; floats are not accepted)");
}

std::string spec_csv(const std::string& field, const nlohmann::json& v) {
    if (!v.is_array()) return spec_atom(field, v);
    std::string out;
    for (const auto& item : v) {
        if (!out.empty()) out += ',';
        out += spec_atom(field, item);
    }
    return out;
}

std::vector<int> spec_ints(const std::string& field, const nlohmann::json& v) {
    std::vector<int> out;
    if (v.is_array())
        for (const auto& item : v) out.push_back(parse_int("spec." + field, spec_atom(field, item)));
    else
        out.push_back(parse_int("spec." + field, spec_atom(field, v)));
    return out;
}

Job load_spec(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw InputError("spec: cannot read '" + path + "'");
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(f);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError("spec: " + std::string(e.what()));
    }
    if (!doc.is_object()) throw InputError("spec: top level must be an object");

    Job job;
    for (const auto& [key, val] : doc.items()) {
        if (key == "command") job.command = spec_atom(key, val);
        else if (key == "algebra" || key == "preset") job.algebra = spec_atom(key, val);
        else if (key == "psi") {
            if (val.is_object()) {
                for (const auto& [pk, pv] : val.items()) {
                    if (pk == "h") job.psi_h = spec_csv("psi.h", pv);
                    else if (pk == "K") job.psi_K = spec_csv("psi.K", pv);
                    else if (pk == "L0") job.psi_L0 = spec_csv("psi.L0", pv);
                    else throw InputError("spec.psi: unknown field '" + pk + "' (h, K, L0)");
                }
            } else {
                job.psi = spec_atom(key, val);
            }
        }
        else if (key == "box") job.box = spec_csv(key, val);
        else if (key == "output") {
            std::string mode = spec_atom(key, val);
            if (mode == "json") job.json_out = true;
            else if (mode != "text") throw InputError("spec.output: expected text or json");
        }
        else if (key == "out") job.out_path = spec_atom(key, val);
        else if (key == "j") job.js = spec_ints(key, val);
        else if (key == "k") job.ks = spec_ints(key, val);
        else if (key == "a") job.a_str = spec_csv(key, val);
        else if (key == "b") job.b_str = spec_csv(key, val);
        else if (key == "reach") job.reach = parse_int("spec.reach", spec_atom(key, val));
        else if (key == "nmax") job.nmax = parse_int("spec.nmax", spec_atom(key, val));
        else if (key == "triples") job.triples = parse_int("spec.triples", spec_atom(key, val));
        else if (key == "ideal") {
            if (!val.is_array()) throw InputError("spec.ideal: expected an array of generators");
            for (const auto& g : val) job.gens.push_back(spec_csv("ideal", g));
        }
        else if (key == "elem") job.elem = spec_atom(key, val);
        else if (key == "coeff") job.coeff = spec_csv(key, val);
        else if (key == "op") job.op = spec_atom(key, val);
        else if (key == "at") job.at = spec_atom(key, val);
        else if (key == "module") job.module_kind = spec_atom(key, val);
        else if (key == "z") job.z_str = spec_csv(key, val);
        else if (key == "lam" || key == "lambda") job.lam_str = spec_csv(key, val);
        else if (key == "c" || key == "level") job.c_str = spec_csv(key, val);
        else if (key == "d0") job.d0_str = spec_csv(key, val);
        else throw InputError("spec: unknown field '" + key + "'");
    }
    if (job.command.empty()) throw InputError("spec: missing field 'command'");
    return job;
}

} // namespace

int main(int argc, char** argv) {
    Job job;
    std::string spec_path;

    CLI::App app{"exact engine for the loop affine-Virasoro algebra of sl2 over a "
                 "commutative coefficient algebra"};
    app.fallthrough();
    app.require_subcommand(0, 1);
    app.add_option("--spec", spec_path, "JSON job file (instead of a subcommand)");
    app.add_flag("--json", job.json_out, "emit the report as JSON");
    app.add_option("--out", job.out_path, "write the report to a file instead of stdout");

    auto add_algebra = [&](CLI::App* sc) {
        sc->add_option("--algebra,--preset", job.algebra,
                       "scalar | jet:N | points:z1,z2,... | poly:c0,c1,... | laurent:c0,c1,...")
            ->capture_default_str();
    };
    auto add_psi = [&](CLI::App* sc) {
        sc->add_option("--psi", job.psi, "scalar-algebra form lam=L,c=C,d0=D");
        sc->add_option("--psi-h", job.psi_h, "dense h-row over the coefficient basis");
        sc->add_option("--psi-K", job.psi_K, "dense central row");
        sc->add_option("--psi-L0", job.psi_L0, "dense L0 row");
    };
    auto add_box = [&](CLI::App* sc, const char* dflt) {
        sc->add_option("--box", job.box, std::string("weight window P,Q (default ") + dflt + ")");
    };
    auto add_module = [&](CLI::App* sc) {
        sc->add_option("--module", job.module_kind, "verma | irreducible")->capture_default_str();
    };
    auto add_pair = [&](CLI::App* sc) {
        sc->add_option("--a", job.a_str, "coefficient a as dense coordinates (default unit)");
        sc->add_option("--b", job.b_str, "coefficient b as dense coordinates (default unit)");
    };

    CLI::App* sc = app.add_subcommand("validate-algebra",
                                      "check the coefficient algebra and the bracket identities");
    add_algebra(sc);
    sc->add_option("--triples", job.triples, "random symbol triples to probe")
        ->capture_default_str();
    sc->callback([&] { job.command = "validate-algebra"; });

    sc = app.add_subcommand("radical", "nilradical of a coefficient algebra modulo an ideal");
    add_algebra(sc);
    sc->add_option("--gen", job.gens, "ideal generator as dense coordinates (repeatable)");
    sc->callback([&] { job.command = "radical"; });

    sc = app.add_subcommand("crt", "split a semisimple coefficient algebra into points");
    add_algebra(sc);
    sc->callback([&] { job.command = "crt"; });

    sc = app.add_subcommand("verma-dims", "weight space dimension table of a Verma module");
    add_algebra(sc);
    add_psi(sc);
    add_box(sc, "4,4");
    sc->callback([&] { job.command = "verma-dims"; });

    sc = app.add_subcommand("irreducible-dims",
                            "weight space dimension table of the irreducible quotient");
    add_algebra(sc);
    add_psi(sc);
    add_box(sc, "4,4");
    sc->callback([&] { job.command = "irreducible-dims"; });

    sc = app.add_subcommand("apply", "apply a generator or operator to a labeled basis vector");
    add_algebra(sc);
    add_psi(sc);
    add_box(sc, "2,2");
    add_module(sc);
    sc->add_option("--elem", job.elem, "generator: X(n), h(n), Y(n), L(n), or K");
    sc->add_option("--coeff", job.coeff, "coefficient of the generator (default unit)");
    sc->add_option("--op", job.op, "operator: omega or T:j");
    add_pair(sc);
    sc->add_option("--at", job.at, "target basis vector p,q:index")->capture_default_str();
    sc->callback([&] { job.command = "apply"; });

    sc = app.add_subcommand("singular", "scan a Verma window for singular vectors");
    add_algebra(sc);
    add_psi(sc);
    add_box(sc, "2,2");
    sc->callback([&] { job.command = "singular"; });

    sc = app.add_subcommand("check-central",
                            "commutation of T_j with the scalar affine subalgebra");
    add_algebra(sc);
    add_psi(sc);
    add_box(sc, "3,3");
    add_module(sc);
    sc->add_option("--j", job.js, "operator modes (default 0)")->delimiter(',');
    add_pair(sc);
    sc->add_option("--reach", job.reach, "t-power reach of the probe generators")
        ->capture_default_str();
    sc->callback([&] { job.command = "check-central"; });

    sc = app.add_subcommand("check-bracket",
                            "Virasoro bracket of T_j: mode shift and boundary scalar");
    add_algebra(sc);
    add_psi(sc);
    add_box(sc, "2,4");
    add_module(sc);
    sc->add_option("--k", job.ks, "Virasoro modes (default 1,2)")->delimiter(',');
    sc->add_option("--j", job.js, "operator modes (default 1,-1,2,-2)")->delimiter(',');
    add_pair(sc);
    sc->callback([&] { job.command = "check-bracket"; });

    sc = app.add_subcommand("check-integrable",
                            "dominance test plus nilpotency of the real-root strings");
    add_algebra(sc);
    add_psi(sc);
    add_box(sc, "6,2");
    add_module(sc);
    sc->add_option("--nmax", job.nmax, "largest probed power")->capture_default_str();
    // the nilpotency claim lives in the irreducible quotient, not the Verma
    sc->callback([&, self = sc] {
        job.command = "check-integrable";
        if (self->count("--module") == 0) job.module_kind = "irreducible";
    });

    sc = app.add_subcommand("check-annihilation",
                            "cofinite ideal annihilating the irreducible module");
    add_algebra(sc);
    add_psi(sc);
    add_box(sc, "3,3");
    sc->add_option("--gen", job.gens, "ideal generator as dense coordinates (repeatable)");
    sc->add_option("--reach", job.reach, "t-power reach of the probed symbols")
        ->capture_default_str();
    sc->callback([&] { job.command = "check-annihilation"; });

    sc = app.add_subcommand("example31",
                            "two-point evaluation tensor: T_-1 and T_-2 images of v1 x v2");
    sc->add_option("--z", job.z_str, "evaluation points z1,z2 (default 1,2)");
    sc->add_option("--lam", job.lam_str, "highest weights l1,l2 (default 2,3)");
    sc->add_option("--c", job.c_str, "levels c1,c2 (default 1,2)");
    sc->add_option("--d0", job.d0_str, "L0 values d1,d2")->capture_default_str();
    add_box(sc, "2,2");
    sc->callback([&] { job.command = "example31"; });

    sc = app.add_subcommand("selftest", "run the full acceptance suite");
    sc->callback([&] { job.command = "selftest"; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (!spec_path.empty()) {
            if (!job.command.empty())
                throw InputError("give either --spec or a subcommand, not both");
            bool json_flag = job.json_out;
            std::string out_flag = job.out_path;
            job = load_spec(spec_path);
            job.json_out = job.json_out || json_flag;
            if (!out_flag.empty()) job.out_path = out_flag;
        }
        if (job.command.empty()) {
            std::cerr << "tau-loop: no command given; see --help\n";
            return 2;
        }
        return run_job(job);
    } catch (const InputError& e) {
        std::cerr << "tau-loop: input error: " << e.what() << "\n";
        return 2;
    } catch (const TruncationError& e) {
        std::cerr << "tau-loop: truncation: " << e.what() << " (enlarge --box)\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "tau-loop: error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "tau-loop: error: " << e.what() << "\n";
        return 2;
    }
}
