#include "hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace qswap {

CompositeSpace::CompositeSpace(std::vector<int> d, std::vector<std::string> l)
    : dims(std::move(d)), labels(std::move(l)) {
    if (dims.size() != labels.size())
        throw DimensionError("CompositeSpace: dims/labels size mismatch");
    for (int dim : dims)
        if (dim < 2) throw DimensionError("CompositeSpace: subsystem dimension < 2");
    std::set<std::string> seen(labels.begin(), labels.end());
    if (seen.size() != labels.size())
        throw DimensionError("CompositeSpace: duplicate subsystem labels");
}

Eigen::Index CompositeSpace::total() const {
    Eigen::Index t = 1;
    for (int d : dims) t *= d;
    return t;
}

int CompositeSpace::index_of(const std::string& label) const {
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == label) return static_cast<int>(i);
    return -1;
}

std::vector<Eigen::Index> CompositeSpace::strides() const {
    std::vector<Eigen::Index> s(dims.size(), 1);
    for (int k = static_cast<int>(dims.size()) - 2; k >= 0; --k)
        s[k] = s[k + 1] * dims[k + 1];
    return s;
}

StateVector StateVector::normalized() const {
    double n = norm();
    if (n < kBranchEpsilon) throw ZeroProbabilityBranch("cannot normalize zero state");
    return {space, amps / n};
}

StateVector tensor_states(const std::vector<StateVector>& parts) {
    if (parts.empty()) throw DimensionError("tensor_states: empty part list");
    std::vector<int> dims;
    std::vector<std::string> labels;
    Eigen::Index total = 1;
    for (const auto& p : parts) {
        dims.insert(dims.end(), p.space.dims.begin(), p.space.dims.end());
        labels.insert(labels.end(), p.space.labels.begin(), p.space.labels.end());
        total *= p.space.total();
    }
    Vec amps = Vec::Ones(1);
    for (const auto& p : parts) {
        Vec next(amps.size() * p.amps.size());
        for (Eigen::Index i = 0; i < amps.size(); ++i)
            next.segment(i * p.amps.size(), p.amps.size()) = amps(i) * p.amps;
        amps = std::move(next);
    }
    StateVector out{CompositeSpace(std::move(dims), std::move(labels)), std::move(amps)};
    return out.normalized();
}

namespace {

void check_target(const CompositeSpace& space, int target) {
    if (target < 0 || static_cast<std::size_t>(target) >= space.size())
        throw DimensionError("subsystem index out of range");
}

// Flat-offset tables splitting the full index into (rest, targets) parts.
struct LocalLayout {
    std::vector<Eigen::Index> target_offsets; // size = product of target dims
    std::vector<Eigen::Index> rest_offsets;   // size = total / that
};

LocalLayout make_layout(const CompositeSpace& space, const std::vector<int>& targets) {
    std::set<int> tset(targets.begin(), targets.end());
    if (tset.size() != targets.size())
        throw DimensionError("apply_local: duplicate target subsystem");
    for (int t : targets) check_target(space, t);
    auto strides = space.strides();

    LocalLayout lay;
    lay.target_offsets.assign(1, 0);
    for (int t : targets) {
        std::vector<Eigen::Index> next;
        next.reserve(lay.target_offsets.size() * space.dims[t]);
        for (Eigen::Index base : lay.target_offsets)
            for (int v = 0; v < space.dims[t]; ++v)
                next.push_back(base + v * strides[t]);
        lay.target_offsets = std::move(next);
    }
    lay.rest_offsets.assign(1, 0);
    for (std::size_t k = 0; k < space.size(); ++k) {
        if (tset.count(static_cast<int>(k))) continue;
        std::vector<Eigen::Index> next;
        next.reserve(lay.rest_offsets.size() * space.dims[k]);
        for (Eigen::Index base : lay.rest_offsets)
            for (int v = 0; v < space.dims[k]; ++v)
                next.push_back(base + v * strides[k]);
        lay.rest_offsets = std::move(next);
    }
    return lay;
}

} // namespace

OperatorMatrix embed(const OperatorMatrix& op, const CompositeSpace& space, int target) {
    check_target(space, target);
    if (op.dim() != space.dims[target])
        throw DimensionError("embed: operator dimension does not match subsystem");
    auto lay = make_layout(space, {target});
    const Eigen::Index total = space.total();
    Mat full = Mat::Zero(total, total);
    const Eigen::Index d = op.dim();
    for (Eigen::Index r : lay.rest_offsets)
        for (Eigen::Index i = 0; i < d; ++i)
            for (Eigen::Index j = 0; j < d; ++j)
                full(r + lay.target_offsets[i], r + lay.target_offsets[j]) = op.entries(i, j);
    return {std::move(full), op.unitary_flag};
}

StateVector apply(const OperatorMatrix& op, const StateVector& state) {
    if (op.dim() != state.amps.size())
        throw DimensionError("apply: operator/state dimension mismatch");
    return {state.space, op.entries * state.amps};
}

StateVector apply_local(const OperatorMatrix& op, const StateVector& state,
                        const std::vector<int>& targets) {
    auto lay = make_layout(state.space, targets);
    const Eigen::Index d = static_cast<Eigen::Index>(lay.target_offsets.size());
    if (op.dim() != d)
        throw DimensionError("apply_local: operator dimension does not match targets");
    Vec out(state.amps.size());
    Vec block(d);
    for (Eigen::Index r : lay.rest_offsets) {
        for (Eigen::Index i = 0; i < d; ++i) block(i) = state.amps(r + lay.target_offsets[i]);
        Vec res = op.entries * block;
        for (Eigen::Index i = 0; i < d; ++i) out(r + lay.target_offsets[i]) = res(i);
    }
    return {state.space, std::move(out)};
}

std::vector<MeasureOutcome> measure_subsystem(const StateVector& state, int target) {
    check_target(state.space, target);
    auto lay = make_layout(state.space, {target});
    const int d = state.space.dims[target];
    std::vector<MeasureOutcome> outcomes;
    for (int level = 0; level < d; ++level) {
        double p = 0.0;
        for (Eigen::Index r : lay.rest_offsets)
            p += std::norm(state.amps(r + lay.target_offsets[level]));
        if (p < kBranchEpsilon) continue;
        Vec post = Vec::Zero(state.amps.size());
        for (Eigen::Index r : lay.rest_offsets) {
            Eigen::Index idx = r + lay.target_offsets[level];
            post(idx) = state.amps(idx);
        }
        post /= std::sqrt(p);
        outcomes.push_back({level, p, StateVector{state.space, std::move(post)}});
    }
    return outcomes;
}

std::pair<double, StateVector> post_select(const StateVector& state, int target, int level) {
    check_target(state.space, target);
    if (level < 0 || level >= state.space.dims[target])
        throw DimensionError("post_select: level out of range");
    auto lay = make_layout(state.space, {target});
    double p = 0.0;
    for (Eigen::Index r : lay.rest_offsets)
        p += std::norm(state.amps(r + lay.target_offsets[level]));
    if (p < kBranchEpsilon)
        throw ZeroProbabilityBranch("post_select: outcome has zero probability");

    std::vector<int> dims;
    std::vector<std::string> labels;
    for (std::size_t k = 0; k < state.space.size(); ++k) {
        if (static_cast<int>(k) == target) continue;
        dims.push_back(state.space.dims[k]);
        labels.push_back(state.space.labels[k]);
    }
    Vec amps(static_cast<Eigen::Index>(lay.rest_offsets.size()));
    const double inv = 1.0 / std::sqrt(p);
    for (std::size_t r = 0; r < lay.rest_offsets.size(); ++r)
        amps(static_cast<Eigen::Index>(r)) =
            state.amps(lay.rest_offsets[r] + lay.target_offsets[level]) * inv;
    // rest_offsets enumerate the remaining subsystems in row-major order, so
    // the gathered vector is already laid out for the reduced space.
    return {p, StateVector{CompositeSpace(std::move(dims), std::move(labels)), std::move(amps)}};
}

double fidelity(const StateVector& state, const StateVector& target) {
    if (state.amps.size() != target.amps.size())
        throw DimensionError("fidelity: dimension mismatch");
    return std::norm(target.amps.dot(state.amps));
}

double subsystem_fidelity(const StateVector& state, const std::vector<int>& targets,
                          const StateVector& target_state) {
    auto lay = make_layout(state.space, targets);
    const Eigen::Index d = static_cast<Eigen::Index>(lay.target_offsets.size());
    if (target_state.amps.size() != d)
        throw DimensionError("subsystem_fidelity: target state dimension mismatch");
    double total = 0.0;
    for (Eigen::Index r : lay.rest_offsets) {
        Complex w = 0.0;
        for (Eigen::Index i = 0; i < d; ++i)
            w += std::conj(target_state.amps(i)) * state.amps(r + lay.target_offsets[i]);
        total += std::norm(w);
    }
    return total;
}

StateVector basis_state(const CompositeSpace& space, const std::vector<int>& levels) {
    if (levels.size() != space.size())
        throw DimensionError("basis_state: wrong number of levels");
    auto strides = space.strides();
    Eigen::Index idx = 0;
    for (std::size_t k = 0; k < levels.size(); ++k) {
        if (levels[k] < 0 || levels[k] >= space.dims[k])
            throw DimensionError("basis_state: level out of range");
        idx += levels[k] * strides[k];
    }
    Vec amps = Vec::Zero(space.total());
    amps(idx) = 1.0;
    return {space, std::move(amps)};
}

StateVector insert_subsystem(const StateVector& state, std::size_t pos,
                             const StateVector& part) {
    if (part.space.size() != 1)
        throw DimensionError("insert_subsystem: part must be a single subsystem");
    if (pos > state.space.size())
        throw DimensionError("insert_subsystem: position out of range");

    std::vector<int> dims = state.space.dims;
    std::vector<std::string> labels = state.space.labels;
    dims.insert(dims.begin() + pos, part.space.dims[0]);
    labels.insert(labels.begin() + pos, part.space.labels[0]);
    CompositeSpace space(std::move(dims), std::move(labels));

    // outer = subsystems before pos, inner = subsystems after pos.
    Eigen::Index inner = 1;
    for (std::size_t k = pos; k < state.space.size(); ++k) inner *= state.space.dims[k];
    const Eigen::Index outer = state.space.total() / inner;
    const Eigen::Index pd = part.amps.size();

    Vec amps(space.total());
    for (Eigen::Index o = 0; o < outer; ++o)
        for (Eigen::Index v = 0; v < pd; ++v)
            for (Eigen::Index i = 0; i < inner; ++i)
                amps(o * pd * inner + v * inner + i) = state.amps(o * inner + i) * part.amps(v);
    return {std::move(space), std::move(amps)};
}

StateVector replace_product_factor(const StateVector& state, int target,
                                   const Vec& fresh, const std::string& fresh_label) {
    check_target(state.space, target);
    auto lay = make_layout(state.space, {target});
    const Eigen::Index d = static_cast<Eigen::Index>(lay.target_offsets.size());
    const Eigen::Index rcount = static_cast<Eigen::Index>(lay.rest_offsets.size());

    // Column with the largest norm is proportional to the rest-factor if the
    // state is a product across this cut.
    Eigen::Index best = 0;
    double best_norm = -1.0;
    for (Eigen::Index n = 0; n < d; ++n) {
        double cn = 0.0;
        for (Eigen::Index r = 0; r < rcount; ++r)
            cn += std::norm(state.amps(lay.rest_offsets[r] + lay.target_offsets[n]));
        if (cn > best_norm) { best_norm = cn; best = n; }
    }
    Vec u(rcount);
    for (Eigen::Index r = 0; r < rcount; ++r)
        u(r) = state.amps(lay.rest_offsets[r] + lay.target_offsets[best]);
    u /= u.norm();

    Vec v(d);
    for (Eigen::Index n = 0; n < d; ++n) {
        Complex s = 0.0;
        for (Eigen::Index r = 0; r < rcount; ++r)
            s += std::conj(u(r)) * state.amps(lay.rest_offsets[r] + lay.target_offsets[n]);
        v(n) = s;
    }
    double resid2 = 0.0;
    for (Eigen::Index n = 0; n < d; ++n)
        for (Eigen::Index r = 0; r < rcount; ++r)
            resid2 += std::norm(state.amps(lay.rest_offsets[r] + lay.target_offsets[n]) - u(r) * v(n));
    if (std::sqrt(resid2) > 1e-8 * state.norm())
        throw ProtocolError("field re-preparation requires a disentangled field state");

    std::vector<int> dims = state.space.dims;
    std::vector<std::string> labels = state.space.labels;
    dims[target] = static_cast<int>(fresh.size());
    labels[target] = fresh_label;
    CompositeSpace space(std::move(dims), std::move(labels));
    auto lay2 = make_layout(space, {target});
    Vec amps(space.total());
    for (Eigen::Index r = 0; r < rcount; ++r)
        for (Eigen::Index n = 0; n < fresh.size(); ++n)
            amps(lay2.rest_offsets[r] + lay2.target_offsets[n]) = u(r) * fresh(n);
    return StateVector{std::move(space), std::move(amps)}.normalized();
}

} // namespace qswap
