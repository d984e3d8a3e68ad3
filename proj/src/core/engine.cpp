#include "engine.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bosonic.hpp"

namespace qswap::engine {

using namespace protocol;
using atoms::AtomSpecies;
using atoms::SpeciesKind;

namespace {

struct Branch {
    StateVector state;
    std::vector<PathEntry> path;
};

struct PathCondition {
    std::string atom;
    std::string level;
};

std::vector<PathCondition> parse_path_spec(const std::string& spec) {
    std::vector<PathCondition> conds;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == item.size())
            throw ProtocolError("malformed outcome path '" + spec + "'");
        conds.push_back({item.substr(0, eq), item.substr(eq + 1)});
    }
    if (conds.empty()) throw ProtocolError("empty outcome path");
    return conds;
}

bool branch_matches(const Branch& b, const std::vector<PathCondition>& conds) {
    for (const auto& c : conds) {
        bool found = false;
        for (const auto& e : b.path)
            if (e.atom == c.atom && e.level == c.level) { found = true; break; }
        if (!found) return false;
    }
    return true;
}

bool path_mentions(const std::vector<PathCondition>& conds, const std::string& atom) {
    return std::any_of(conds.begin(), conds.end(),
                       [&](const PathCondition& c) { return c.atom == atom; });
}

int subsystem_index(const StateVector& s, const std::string& label, const char* what) {
    int idx = s.space.index_of(label);
    if (idx < 0)
        throw ProtocolError(std::string(what) + ": subsystem '" + label +
                            "' is not present (already post-selected away?)");
    return idx;
}

int field_index(const StateVector& s) {
    return subsystem_index(s, bosonic::kFieldLabel, "field operation");
}

double field_truncation_weight(const StateVector& s) {
    int t = field_index(s);
    const int fd = s.space.dims[t];
    auto strides = s.space.strides();
    double w = 0.0;
    for (Eigen::Index i = 0; i < s.amps.size(); ++i) {
        int level = static_cast<int>((i / strides[t]) % fd);
        if (level >= fd - 3) w += std::norm(s.amps(i));
    }
    return w;
}

void check_truncation(const StateVector& s, const char* when) {
    double w = field_truncation_weight(s);
    if (w > 1e-8) {
        std::ostringstream os;
        os << "field weight " << w << " on the top three Fock levels after " << when
           << " exceeds 1e-8; raise the cutoff";
        throw CutoffError(os.str());
    }
}

const AtomSpecies& require_species(const Protocol& p, const std::string& atom) {
    const AtomSpecies* sp = p.species_of(atom);
    if (!sp) throw ProtocolError("undeclared atom '" + atom + "'");
    return *sp;
}

int require_level(const AtomSpecies& sp, const std::string& atom, const std::string& level) {
    int idx = sp.level_index(level);
    if (idx < 0)
        throw ProtocolError("atom '" + atom + "' (" + sp.name() + ") has no level '" +
                            level + "'");
    return idx;
}

} // namespace

int auto_cutoff(const Protocol& p) {
    double bound = 0.0, peak = 0.0;
    for (const Step& step : p.steps) {
        if (const auto* c = std::get_if<PrepareFieldCoherent>(&step))
            bound = std::abs(c->alpha);
        else if (std::get_if<PrepareFieldFockPlus>(&step) ||
                 std::get_if<PrepareFieldVacuum>(&step))
            bound = 0.0;
        else if (const auto* inj = std::get_if<Inject>(&step))
            bound += std::abs(inj->beta);
        peak = std::max(peak, bound);
    }
    return bosonic::cutoff_rule(peak);
}

RunReport run(const Protocol& p, const RunOptions& opts) {
    const int n_max = opts.cutoff_override.value_or(auto_cutoff(p));
    if (n_max < 3) throw CutoffError("cutoff must be at least 3");
    const int fd = n_max + 1;

    RunReport report;
    report.protocol_name = p.name;
    report.cutoff = n_max;
    report.params = p.params;

    // initial state: every declared atom in its lowest level, vacuum field last
    {
        std::vector<int> dims;
        std::vector<std::string> labels;
        for (const auto& a : p.atoms) {
            dims.push_back(a.species.dim());
            labels.push_back(a.label);
        }
        dims.push_back(fd);
        labels.push_back(bosonic::kFieldLabel);
        CompositeSpace space(std::move(dims), std::move(labels));
        std::vector<int> zeros(space.size(), 0);
        report.branches.clear();
        std::vector<Branch> init{{basis_state(space, zeros), {}}};
        // processed below
        std::vector<Branch> branches = std::move(init);

        for (const Step& step : p.steps) {
            if (const auto* s = std::get_if<PrepareAtom>(&step)) {
                const AtomSpecies& sp = require_species(p, s->atom);
                int level = require_level(sp, s->atom, s->level);
                Vec fresh = Vec::Zero(sp.dim());
                fresh(level) = 1.0;
                for (auto& b : branches) {
                    int idx = subsystem_index(b.state, s->atom, "prepare");
                    b.state = replace_product_factor(b.state, idx, fresh, s->atom);
                }
            } else if (const auto* s = std::get_if<PrepareFieldCoherent>(&step)) {
                Vec fresh = bosonic::coherent_state(s->alpha, n_max).amps;
                for (auto& b : branches) {
                    b.state = replace_product_factor(b.state, field_index(b.state), fresh,
                                                     bosonic::kFieldLabel);
                    check_truncation(b.state, "field preparation");
                }
            } else if (std::get_if<PrepareFieldFockPlus>(&step)) {
                Vec fresh = bosonic::fock_plus_state(n_max).amps;
                for (auto& b : branches)
                    b.state = replace_product_factor(b.state, field_index(b.state), fresh,
                                                     bosonic::kFieldLabel);
            } else if (std::get_if<PrepareFieldVacuum>(&step)) {
                Vec fresh = bosonic::vacuum_state(n_max).amps;
                for (auto& b : branches)
                    b.state = replace_product_factor(b.state, field_index(b.state), fresh,
                                                     bosonic::kFieldLabel);
            } else if (const auto* s = std::get_if<Rotate>(&step)) {
                const AtomSpecies& sp = require_species(p, s->atom);
                OperatorMatrix op = atoms::rotation(s->name, sp);
                for (auto& b : branches) {
                    int idx = subsystem_index(b.state, s->atom, "rotation");
                    b.state = apply_local(op, b.state, {idx});
                }
            } else if (const auto* s = std::get_if<InteractDispersive>(&step)) {
                const AtomSpecies& sp = require_species(p, s->atom);
                OperatorMatrix op;
                switch (sp.kind) {
                case SpeciesKind::Cascade:
                    op = atoms::dispersive_cascade_u(s->phi, n_max);
                    break;
                case SpeciesKind::Lambda:
                    op = atoms::dispersive_lambda_u(s->phi, n_max);
                    break;
                default:
                    throw ProtocolError("dispersive interaction needs a cascade or lambda "
                                        "atom, got '" + s->atom + "'");
                }
                for (auto& b : branches) {
                    int ai = subsystem_index(b.state, s->atom, "interaction");
                    int fi = field_index(b.state);
                    b.state = apply_local(op, b.state, {ai, fi});
                }
            } else if (const auto* s = std::get_if<InteractResonant>(&step)) {
                const AtomSpecies& sp = require_species(p, s->atom);
                if (sp.kind != SpeciesKind::TwoLevel)
                    throw ProtocolError("resonant interaction needs a two-level atom, got '" +
                                        s->atom + "'");
                OperatorMatrix op = atoms::resonant_jc_u(s->g_tau, n_max);
                for (auto& b : branches) {
                    int ai = subsystem_index(b.state, s->atom, "interaction");
                    int fi = field_index(b.state);
                    b.state = apply_local(op, b.state, {ai, fi});
                }
            } else if (const auto* s = std::get_if<Inject>(&step)) {
                OperatorMatrix op = bosonic::displacement(s->beta, n_max);
                for (auto& b : branches) {
                    b.state = apply_local(op, b.state, {field_index(b.state)});
                    check_truncation(b.state, "injection");
                }
            } else if (const auto* s = std::get_if<Measure>(&step)) {
                const AtomSpecies& sp = require_species(p, s->atom);
                std::vector<Branch> next;
                for (auto& b : branches) {
                    int idx = subsystem_index(b.state, s->atom, "measurement");
                    for (auto& out : measure_subsystem(b.state, idx)) {
                        Branch nb{std::move(out.post), b.path};
                        nb.path.push_back({s->atom, sp.level_names()[out.level],
                                           out.probability, false});
                        next.push_back(std::move(nb));
                    }
                }
                branches = std::move(next);
            } else if (const auto* s = std::get_if<PostSelect>(&step)) {
                const AtomSpecies& sp = require_species(p, s->atom);
                int level = require_level(sp, s->atom, s->level);
                for (auto& b : branches) {
                    int idx = subsystem_index(b.state, s->atom, "post-selection");
                    auto [prob, post] = post_select(b.state, idx, level);
                    b.state = std::move(post);
                    b.path.push_back({s->atom, s->level, prob, true});
                }
            } else if (const auto* s = std::get_if<AssertFidelity>(&step)) {
                const AtomSpecies& sp = require_species(p, s->atom_a);
                StateVector target =
                    bell_state({s->target, sp, s->atom_a, s->atom_b});
                double worst = 1.0;
                for (auto& b : branches) {
                    int ia = subsystem_index(b.state, s->atom_a, "fidelity assertion");
                    int ib = subsystem_index(b.state, s->atom_b, "fidelity assertion");
                    worst = std::min(worst, subsystem_fidelity(b.state, {ia, ib}, target));
                }
                AssertionRecord rec;
                rec.description = "fidelity(" + s->atom_a + "," + s->atom_b + " : " +
                                  bell_name(s->target) + ")";
                rec.expected = 1.0;
                rec.actual = worst;
                rec.tolerance = s->tolerance;
                rec.passed = (1.0 - worst) <= s->tolerance;
                report.all_assertions_passed &= rec.passed;
                report.assertions.push_back(std::move(rec));
            } else if (const auto* s = std::get_if<AssertProbability>(&step)) {
                auto conds = parse_path_spec(s->path);
                // conditional on any post-selection the path spec does not
                // itself mention
                double total = 0.0;
                for (const auto& b : branches) {
                    if (!branch_matches(b, conds)) continue;
                    double prob = 1.0;
                    for (const auto& e : b.path)
                        if (!e.postselected || path_mentions(conds, e.atom)) prob *= e.probability;
                    total += prob;
                }
                AssertionRecord rec;
                rec.description = "probability(" + s->path + ")";
                rec.expected = s->expected;
                rec.actual = total;
                rec.tolerance = s->tolerance;
                rec.passed = std::abs(total - s->expected) <= s->tolerance;
                report.all_assertions_passed &= rec.passed;
                report.assertions.push_back(std::move(rec));
            }
        }

        // Bell labeling pair: the first fidelity assertion's pair, else the
        // swapped pair (A1, A4) when it exists, else (A1, A2).
        report.bell_pair = {"", ""};
        for (const Step& step : p.steps)
            if (const auto* s = std::get_if<AssertFidelity>(&step)) {
                report.bell_pair = {s->atom_a, s->atom_b};
                break;
            }
        if (report.bell_pair.first.empty()) {
            if (p.species_of("A1") && p.species_of("A4"))
                report.bell_pair = {"A1", "A4"};
            else if (p.species_of("A1") && p.species_of("A2"))
                report.bell_pair = {"A1", "A2"};
        }

        const AtomSpecies* pair_species =
            report.bell_pair.first.empty() ? nullptr : p.species_of(report.bell_pair.first);
        const bool labelable =
            pair_species && pair_species->kind != SpeciesKind::TwoLevel;
        static const std::array<BellKind, 4> kOrder = {BellKind::PhiPlus, BellKind::PhiMinus,
                                                       BellKind::PsiPlus, BellKind::PsiMinus};

        for (auto& b : branches) {
            BranchRecord rec;
            rec.path = b.path;
            for (const auto& e : b.path) {
                rec.probability *= e.probability;
                if (e.postselected) rec.preparation_probability *= e.probability;
            }
            rec.detection_probability = rec.probability / rec.preparation_probability;
            if (labelable) {
                int ia = b.state.space.index_of(report.bell_pair.first);
                int ib = b.state.space.index_of(report.bell_pair.second);
                if (ia >= 0 && ib >= 0) {
                    for (int k = 0; k < 4; ++k) {
                        StateVector target = bell_state({kOrder[k], *pair_species,
                                                         report.bell_pair.first,
                                                         report.bell_pair.second});
                        rec.bell_fidelities[k] =
                            subsystem_fidelity(b.state, {ia, ib}, target);
                    }
                    int best = 0;
                    for (int k = 1; k < 4; ++k)
                        if (rec.bell_fidelities[k] > rec.bell_fidelities[best]) best = k;
                    rec.bell_label = bell_name(kOrder[best]);
                    rec.bell_fidelity = rec.bell_fidelities[best];
                }
            }
            rec.state = std::move(b.state);
            report.total_probability += rec.probability;
            report.branches.push_back(std::move(rec));
        }
    }
    return report;
}

} // namespace qswap::engine
