#include "essx/runner.hpp"

#include "essx/corpus.hpp"

#include <sstream>

namespace essx {

using nlohmann::json;

namespace {

struct Ctx {
    const Document& doc;
    const Task* task = nullptr;  // task block matching the running verb
    RunOptions opts;

    std::optional<std::string> slot(const std::string& key) const {
        if (!task) return std::nullopt;
        auto it = task->args.find(key);
        if (it == task->args.end()) return std::nullopt;
        return it->second;
    }

    template <typename Map>
    const typename Map::mapped_type& pick(const Map& map, const std::string& key,
                                          const std::string& kind) const {
        if (auto name = slot(key)) {
            auto it = map.find(*name);
            if (it == map.end())
                throw ValidationError("task argument '" + key + "' names '" + *name +
                                      "', which is not a " + kind);
            return it->second;
        }
        if (map.size() == 1) return map.begin()->second;
        throw ValidationError("cannot resolve the '" + key + "' argument: supply task.args." + key +
                              " (document has " + std::to_string(map.size()) + " " + kind + "s)");
    }

    const FgModule& module(const std::string& key) const { return pick(doc.modules, key, "module"); }
    const ModMorphism& morphism(const std::string& key) const {
        return pick(doc.morphisms, key, "morphism");
    }
    const CochainComplex& complex_arg(const std::string& key) const {
        return pick(doc.complexes, key, "complex");
    }
    const ShortSequence& sequence(const std::string& key) const {
        return pick(doc.sequences, key, "sequence");
    }
    const Resolution& resolution(const std::string& key) const {
        return pick(doc.resolutions, key, "resolution");
    }
    const IntMatrix& matrix(const std::string& key) const { return pick(doc.matrices, key, "matrix"); }

    Ideal ideal(const std::string& key) const {
        if (opts.ideal) return Ideal(*opts.ideal);
        if (auto name = slot(key)) {
            auto it = doc.ideals.find(*name);
            if (it == doc.ideals.end())
                throw ValidationError("task argument '" + key + "' names '" + *name +
                                      "', which is not an ideal");
            return it->second;
        }
        if (doc.ideals.size() == 1) return doc.ideals.begin()->second;
        throw ValidationError("no ideal given: use --ideal or task.args." + key);
    }

    long long range_lo(long long fallback) const {
        if (opts.range_lo) return *opts.range_lo;
        if (task && task->range_lo) return *task->range_lo;
        return fallback;
    }
    long long range_hi(long long fallback) const {
        if (opts.range_hi) return *opts.range_hi;
        if (task && task->range_hi) return *task->range_hi;
        return fallback;
    }
    Int r_cap() const {
        if (opts.r_cap) return *opts.r_cap;
        if (task && task->r_cap) return *task->r_cap;
        return 0;
    }
    std::uint64_t seed() const {
        if (opts.seed) return *opts.seed;
        if (task && task->seed) return *task->seed;
        return 0;
    }
};

std::string factors_str(const FgModule& m) { return m.describe(); }

json witness_json(const Int& r, const std::string& relation) {
    return json{{"r", int_to_json(r)}, {"relation", relation}};
}

json morphism_json(const ModMorphism& f) {
    return json{{"matrix", matrix_to_json(f.matrix())},
                {"domain", module_to_json(f.domain())},
                {"codomain", module_to_json(f.codomain())}};
}

json evidence_json(const EInjectivityEvidence& ev, bool verbose) {
    json out{{"module", ev.module_description},
             {"all_succeeded", ev.all_succeeded},
             {"probes", ev.probes.size()},
             {"note", ev.note}};
    if (verbose) {
        json list = json::array();
        for (const auto& p : ev.probes)
            list.push_back(json{{"kind", p.kind},
                                {"detail", p.detail},
                                {"succeeded", p.succeeded},
                                {"r", int_to_json(p.r)}});
        out["records"] = std::move(list);
    }
    return out;
}

RunResult finish(int status, json report, std::string human) {
    return RunResult{status, std::move(report), std::move(human)};
}

RunResult do_snf(const Ctx& ctx) {
    const IntMatrix& a = ctx.matrix("matrix");
    SmithForm f = smith_normal_form(a);
    json rep{{"u", matrix_to_json(f.u)}, {"s", matrix_to_json(f.s)}, {"v", matrix_to_json(f.v)}};
    std::vector<Int> diag;
    for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i) diag.push_back(f.s.at(i, i));
    json jd = json::array();
    for (const Int& d : diag) jd.push_back(int_to_json(d));
    rep["diagonal"] = jd;
    std::ostringstream os;
    os << "snf: diagonal [";
    for (std::size_t i = 0; i < diag.size(); ++i) os << (i ? "," : "") << diag[i].str();
    os << "], U*A*V = S verified";
    if (!(f.u * a * f.v == f.s)) throw Error("internal: U*A*V != S");
    return finish(0, rep, os.str());
}

RunResult do_canon(const Ctx& ctx) {
    const FgModule& m = ctx.module("module");
    json rep{{"module", module_to_json(m)}};
    return finish(0, rep, "canon: " + factors_str(m));
}

RunResult do_check_morphism(const Ctx& ctx) {
    const IntMatrix& a = ctx.matrix("matrix");
    const FgModule& dom = ctx.module("domain");
    const FgModule& cod = ctx.module("codomain");
    if (a.rows() != cod.generators() || a.cols() != dom.generators())
        throw ValidationError("matrix shape does not match the generator counts");
    bool ok = span_contains(cod.relations(), a * dom.relations());
    json rep{{"well_defined", ok}};
    return finish(ok ? 0 : 1, rep,
                  std::string("check-morphism: ") + (ok ? "well-defined" : "not a homomorphism"));
}

RunResult do_essential(const Ctx& ctx) {
    const ModMorphism& f = ctx.morphism("embedding");
    Submodule im = image(f);
    bool verdict = is_essential(im);
    json rep{{"essential", verdict},
             {"submodule", module_to_json(im.source)},
             {"ambient", module_to_json(f.codomain())}};
    if (f.codomain().is_finite()) rep["oracle"] = essential_oracle(im);
    std::ostringstream os;
    os << "essential: Im(" << factors_str(im.source) << " -> " << factors_str(f.codomain()) << ") is "
       << (verdict ? "" : "not ") << "essential";
    return finish(verdict ? 0 : 1, rep, os.str());
}

RunResult do_e_exact(const Ctx& ctx) {
    if (!ctx.doc.sequences.empty() || ctx.slot("sequence")) {
        const ShortSequence& s = ctx.sequence("sequence");
        ShortEExactReport rep = is_short_e_exact(s);
        json out{{"e_exact", rep.ok()},
                 {"ker_f_zero", rep.f_monic},
                 {"im_f_in_ker_g", rep.im_f_contained},
                 {"im_f_essential_in_ker_g", rep.im_f_essential},
                 {"im_g_essential", rep.im_g_essential}};
        if (!rep.ok()) out["failed"] = rep.failed();
        return finish(rep.ok() ? 0 : 1, out,
                      std::string("e-exact: ") + (rep.ok() ? "yes" : "no (" + rep.failed() + ")"));
    }
    const CochainComplex& x = ctx.complex_arg("complex");
    long long lo = ctx.range_lo(x.lo), hi = ctx.range_hi(x.hi());
    bool all = true;
    json positions = json::array();
    for (long long i = lo; i <= hi; ++i) {
        EExactAtReport at = is_e_exact_at(x, i);
        positions.push_back(json{{"degree", i}, {"contained", at.contained}, {"essential", at.essential}});
        all = all && at.ok();
    }
    json out{{"e_exact", all}, {"positions", positions}};
    return finish(all ? 0 : 1, out, std::string("e-exact: ") + (all ? "yes" : "no"));
}

RunResult do_e_split(const Ctx& ctx) {
    const ShortSequence& s = ctx.sequence("sequence");
    const ModMorphism& j = ctx.morphism("section");
    Int scalar = ctx.task && ctx.task->split_scalar ? *ctx.task->split_scalar : Int(1);
    ESplitReport rep = check_e_split(s, j, scalar, ctx.r_cap());
    json out{{"split_scalar", int_to_json(rep.split_scalar)},
             {"found", rep.found()},
             {"bound_tried", int_to_json(rep.bound_tried)}};
    if (rep.found()) {
        out["witness"] = witness_json(*rep.witness_r, "rB isomorphic to A + C");
        std::ostringstream os;
        os << "e-split: witness r = " << rep.witness_r->str();
        return finish(0, out, os.str());
    }
    return finish(1, out,
                  "e-split: no witness up to the ladder bound " + rep.bound_tried.str() +
                      " (reported, not a counterexample)");
}

RunResult do_baer(const Ctx& ctx) {
    const FgModule& e = ctx.module("module");
    Int n = ctx.opts.ideal ? *ctx.opts.ideal : ctx.ideal("ideal").generator();
    const IntMatrix& value = ctx.matrix("value");
    if (value.cols() != 1 || value.rows() != e.generators())
        throw ValidationError("value must be a single column of length " +
                              std::to_string(e.generators()));
    BaerExtension b = baer_extend(n, ModElement(e, value.col_vector(0)));
    json out{{"witness", witness_json(b.witness.r, b.witness.relation)},
             {"g_of_1", matrix_to_json(b.g.matrix())},
             {"canonical", b.canonical}};
    return finish(0, out, "baer: r = " + b.witness.r.str() + (b.canonical ? " (canonical witness)" : ""));
}

RunResult do_extend(const Ctx& ctx) {
    const ModMorphism& f1 = ctx.morphism("f1");
    const ModMorphism& f2 = ctx.morphism("f2");
    ExtendResult r = essential_extend({f1, f2}, ctx.r_cap());
    json out{{"found", r.found()}, {"bound_tried", int_to_json(r.bound_tried)}};
    if (r.found()) {
        out["witness"] = witness_json(r.r, "f3 . f1 = r . f2");
        out["f3"] = matrix_to_json(r.extension->matrix());
        return finish(0, out, "extend: witness r = " + r.r.str());
    }
    return finish(1, out, "extend: ladder exhausted at " + r.bound_tried.str());
}

RunResult do_probe(const Ctx& ctx) {
    long long bound = ctx.task && ctx.task->ideal_bound ? *ctx.task->ideal_bound : 10;
    long long monos = ctx.task && ctx.task->mono_samples ? *ctx.task->mono_samples : 4;
    json list = json::array();
    bool all = true;
    std::ostringstream os;
    os << "probe-einjective:";
    if (!ctx.doc.resolutions.empty() || ctx.slot("resolution")) {
        const Resolution& res = ctx.resolution("resolution");
        for (std::size_t k = 0; k < res.complex.objects.size(); ++k) {
            EInjectivityEvidence ev =
                probe_e_injective(res.complex.objects[k], bound, monos, ctx.seed() + k);
            all = all && ev.all_succeeded;
            list.push_back(evidence_json(ev, ctx.opts.verbose));
            os << " term " << k << " [" << ev.module_description << "] "
               << (ev.all_succeeded ? "ok" : "FAILED") << ";";
        }
    } else {
        const FgModule& e = ctx.module("module");
        EInjectivityEvidence ev = probe_e_injective(e, bound, monos, ctx.seed());
        all = ev.all_succeeded;
        list.push_back(evidence_json(ev, ctx.opts.verbose));
        os << " [" << ev.module_description << "] " << (ev.all_succeeded ? "ok" : "FAILED");
    }
    json out{{"all_succeeded", all}, {"evidence", list},
             {"note", "probe evidence is not a proof of e-injectivity"}};
    return finish(all ? 0 : 1, out, os.str());
}

RunResult do_lift(const Ctx& ctx) {
    const ModMorphism& f = ctx.morphism("f");
    const Resolution& bottom = ctx.resolution("bottom");
    const Resolution& top = ctx.resolution("top");
    ChainLift lift = comparison_lift(f, bottom, top, ctx.r_cap());
    json maps = json::array();
    for (const ModMorphism& m : lift.maps) maps.push_back(matrix_to_json(m.matrix()));
    json scalars = json::array();
    for (const Int& r : lift.square_scalars) scalars.push_back(int_to_json(r));
    json out{{"complete", lift.complete},
             {"base_scalar", int_to_json(lift.base_scalar)},
             {"square_scalars", scalars},
             {"maps", maps}};
    if (!lift.complete) out["failed_stage"] = lift.failed_stage;
    return finish(lift.complete ? 0 : 1, out,
                  lift.complete
                      ? "lift: complete, base scalar " + lift.base_scalar.str()
                      : "lift: failed at stage " + std::to_string(lift.failed_stage));
}

RunResult do_homotopy(const Ctx& ctx) {
    const ModMorphism& f = ctx.morphism("f");
    const Resolution& bottom = ctx.resolution("bottom");
    const Resolution& top = ctx.resolution("top");
    std::mt19937_64 v1(ctx.seed() * 2 + 1), v2(ctx.seed() * 2 + 2);
    ChainLift a = comparison_lift(f, bottom, top, ctx.r_cap(), &v1);
    ChainLift b = comparison_lift(f, bottom, top, ctx.r_cap(), &v2);
    if (!a.complete || !b.complete)
        return finish(1, json{{"found", false}, {"detail", "comparison lift incomplete"}},
                      "homotopy: comparison lift incomplete");
    HomotopyResult hw = homotopy_witness(a, b, ctx.r_cap());
    json out{{"found", hw.found}};
    if (hw.found) {
        out["r"] = int_to_json(hw.r);
        out["s"] = int_to_json(hw.s);
        json maps = json::array();
        for (const ModMorphism& m : hw.maps) maps.push_back(matrix_to_json(m.matrix()));
        out["maps"] = maps;
        return finish(0, out, "homotopy: witness r = " + hw.r.str() + ", s = " + hw.s.str());
    }
    return finish(1, out, "homotopy: no witness within the ladder");
}

RunResult do_horseshoe(const Ctx& ctx) {
    const ShortSequence& s = ctx.sequence("sequence");
    const Resolution& left = ctx.resolution("left");
    const Resolution& right = ctx.resolution("right");
    HorseshoeResult hs = horseshoe(s, left, right, ctx.r_cap());
    json out{{"ok", hs.ok}};
    if (hs.ok) {
        json terms = json::array();
        for (const FgModule& m : hs.middle.complex.objects) terms.push_back(module_to_json(m));
        out["middle_terms"] = terms;
        json scalars = json::array();
        for (const Int& r : hs.lift.square_scalars) scalars.push_back(int_to_json(r));
        out["lift_square_scalars"] = scalars;
        std::ostringstream os;
        os << "horseshoe: middle resolution with " << hs.middle.complex.objects.size()
           << " terms, e-exact at every position";
        return finish(0, out, os.str());
    }
    out["failure"] = hs.failure;
    return finish(1, out, "horseshoe: " + hs.failure);
}

RunResult do_gamma(const Ctx& ctx) {
    Ideal a = ctx.ideal("ideal");
    const FgModule& m = ctx.module("module");
    Submodule g = gamma(a, m);
    json out{{"ideal", int_to_json(a.generator())},
             {"torsion_submodule", module_to_json(g.source)},
             {"ambient", module_to_json(m)}};
    json warnings = json::array();
    if (a.is_unit()) warnings.push_back("unit ideal: the torsion functor vanishes identically");
    out["warnings"] = warnings;
    return finish(0, out, "gamma: " + factors_str(g.source) + " inside " + factors_str(m));
}

RunResult do_cohomology(const Ctx& ctx) {
    const CochainComplex& x = ctx.complex_arg("complex");
    long long lo = ctx.range_lo(x.lo), hi = ctx.range_hi(x.hi());
    json entries = json::array();
    std::ostringstream os;
    os << "cohomology:";
    for (long long i = lo; i <= hi; ++i) {
        CohomologyAt at = cohomology_at(x, i);
        entries.push_back(json{{"degree", i}, {"h", module_to_json(at.h)}});
        os << " H^" << i << " = " << factors_str(at.h) << ";";
    }
    return finish(0, json{{"entries", entries}}, os.str());
}

RunResult do_e_cohomology(const Ctx& ctx) {
    Ideal a = ctx.ideal("ideal");
    const FgModule& m = ctx.module("module");
    const Resolution& res = ctx.resolution("resolution");
    long long lo = ctx.range_lo(0), hi = ctx.range_hi(res.complex.hi() + 1);
    ECohomologyReport rep = e_cohomology(a, m, res, lo, hi, 8, 2, ctx.seed());
    json entries = json::array();
    std::ostringstream os;
    os << "e-cohomology of " << rep.module_description << " at ideal (" << a.generator().str()
       << "):";
    for (const auto& e : rep.entries) {
        json entry{{"degree", e.degree}, {"h", module_to_json(e.h)}};
        if (ctx.opts.verbose && e.degree >= 0) {
            entry["kernel"] = module_to_json(FgModule::from_invariants(e.kernel_factors, e.kernel_rank));
            entry["image"] = module_to_json(FgModule::from_invariants(e.image_factors, e.image_rank));
        }
        entries.push_back(std::move(entry));
        os << " H^" << e.degree << " = " << factors_str(e.h) << ";";
    }
    json evidence = json::array();
    for (const auto& ev : rep.term_evidence) evidence.push_back(evidence_json(ev, ctx.opts.verbose));
    json out{{"ideal", int_to_json(rep.ideal_generator)},
             {"module", rep.module_description},
             {"entries", entries},
             {"term_evidence", evidence},
             {"warnings", rep.warnings},
             {"note", rep.note}};
    return finish(0, out, os.str());
}

RunResult do_nine_lemma(const Ctx& ctx) {
    auto seq = [&](const std::string& key) -> const ShortSequence& {
        auto name = ctx.slot(key);
        if (!name) throw ValidationError("nine-lemma needs task.args." + key);
        auto it = ctx.doc.sequences.find(*name);
        if (it == ctx.doc.sequences.end())
            throw ValidationError("nine-lemma argument '" + key + "' is not a sequence");
        return it->second;
    };
    const ShortSequence &r0 = seq("row0"), &r1 = seq("row1"), &r2 = seq("row2");
    const ShortSequence &c0 = seq("col0"), &c1 = seq("col1"), &c2 = seq("col2");
    std::array<std::array<FgModule, 3>, 3> m = {{
        {r0.first(), r0.middle(), r0.last()},
        {r1.first(), r1.middle(), r1.last()},
        {r2.first(), r2.middle(), r2.last()},
    }};
    std::array<std::array<ModMorphism, 2>, 3> rows = {{{r0.f, r0.g}, {r1.f, r1.g}, {r2.f, r2.g}}};
    std::array<std::array<ModMorphism, 3>, 2> cols = {{{c0.f, c1.f, c2.f}, {c0.g, c1.g, c2.g}}};
    NineGrid grid = NineGrid::make(std::move(m), std::move(rows), std::move(cols));
    NineMode mode = NineMode::middle;
    if (ctx.task && ctx.task->mode) {
        if (*ctx.task->mode == "bottom")
            mode = NineMode::bottom;
        else if (*ctx.task->mode != "middle")
            throw ValidationError("nine-lemma mode must be 'middle' or 'bottom'");
    }
    NineLemmaReport rep = verify_nine_lemma(grid, mode);
    json hyps = json::array();
    for (const auto& [name, ok] : rep.hypotheses) hyps.push_back(json{{"name", name}, {"ok", ok}});
    json out{{"hypotheses", hyps}, {"conclusion_e_exact", rep.conclusion.ok()}};
    return finish(rep.conclusion.ok() ? 0 : 1, out,
                  std::string("nine-lemma: concluded row is ") +
                      (rep.conclusion.ok() ? "e-exact" : "NOT e-exact (falsification!)"));
}

RunResult do_long_sequence(const Ctx& ctx) {
    Ideal a = ctx.ideal("ideal");
    const ShortSequence& s = ctx.sequence("sequence");
    const Resolution& left = ctx.resolution("left");
    const Resolution& right = ctx.resolution("right");
    long long hi = ctx.range_hi(2);
    LongSequenceReport rep = long_sequence_verify(a, s, left, right, hi, ctx.r_cap());
    json positions = json::array();
    for (const auto& p : rep.positions)
        positions.push_back(json{{"index", p.index},
                                 {"label", p.label},
                                 {"contained", p.contained},
                                 {"essential", p.essential}});
    json out{{"ok", rep.ok}, {"first_map_monic", rep.first_map_monic}, {"positions", positions}};
    if (!rep.ok) out["failure"] = rep.failure;
    return finish(rep.ok ? 0 : 1, out,
                  rep.ok ? "long-sequence: e-exact at every checked position"
                         : "long-sequence: " + rep.failure);
}

}  // namespace

const std::vector<std::string>& known_verbs() {
    static const std::vector<std::string> verbs = {
        "snf",       "canon",    "check-morphism", "essential",       "e-exact",
        "e-split",   "baer",     "extend",         "probe-einjective", "lift",
        "homotopy",  "horseshoe", "gamma",         "cohomology",      "e-cohomology",
        "nine-lemma", "long-sequence"};
    return verbs;
}

RunResult run_command(const std::string& verb, const Document& doc, const RunOptions& opts) {
    Ctx ctx{doc, nullptr, opts};
    if (doc.task && doc.task->operation == verb) ctx.task = &*doc.task;

    RunResult result;
    try {
        if (verb == "snf")
            result = do_snf(ctx);
        else if (verb == "canon")
            result = do_canon(ctx);
        else if (verb == "check-morphism")
            result = do_check_morphism(ctx);
        else if (verb == "essential")
            result = do_essential(ctx);
        else if (verb == "e-exact")
            result = do_e_exact(ctx);
        else if (verb == "e-split")
            result = do_e_split(ctx);
        else if (verb == "baer")
            result = do_baer(ctx);
        else if (verb == "extend")
            result = do_extend(ctx);
        else if (verb == "probe-einjective")
            result = do_probe(ctx);
        else if (verb == "lift")
            result = do_lift(ctx);
        else if (verb == "homotopy")
            result = do_homotopy(ctx);
        else if (verb == "horseshoe")
            result = do_horseshoe(ctx);
        else if (verb == "gamma")
            result = do_gamma(ctx);
        else if (verb == "cohomology")
            result = do_cohomology(ctx);
        else if (verb == "e-cohomology")
            result = do_e_cohomology(ctx);
        else if (verb == "nine-lemma")
            result = do_nine_lemma(ctx);
        else if (verb == "long-sequence")
            result = do_long_sequence(ctx);
        else
            throw ValidationError("unknown verb '" + verb + "'");
    } catch (const Error& e) {
        json rep{{"error", e.what()}};
        return RunResult{2, rep, std::string("error: ") + e.what()};
    } catch (const std::exception& e) {
        json rep{{"error", e.what()}};
        return RunResult{2, rep, std::string("error: ") + e.what()};
    }

    result.report["verb"] = verb;
    result.report["seed"] = ctx.seed();
    if (doc.task && doc.task->operation == verb) result.report["task"] = doc.raw.contains("task") ? doc.raw["task"] : json();
    return result;
}

}  // namespace essx
