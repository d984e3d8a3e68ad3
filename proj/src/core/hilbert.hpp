#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "errors.hpp"

namespace qswap {

using Complex = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

/// Measurement outcomes with Born probability below this are dropped as
/// floating-point dust; post-selecting on them is an error.
inline constexpr double kBranchEpsilon = 1e-14;

/// Ordered list of subsystem dimensions. The list order is the tensor
/// order: row-major flattening, first subsystem most significant.
struct CompositeSpace {
    std::vector<int> dims;
    std::vector<std::string> labels;

    CompositeSpace() = default;
    CompositeSpace(std::vector<int> d, std::vector<std::string> l);

    std::size_t size() const { return dims.size(); }
    Eigen::Index total() const;
    /// Subsystem index for a label, -1 if absent.
    int index_of(const std::string& label) const;
    /// stride[k] = product of dims[j] for j > k.
    std::vector<Eigen::Index> strides() const;

    bool operator==(const CompositeSpace& o) const {
        return dims == o.dims && labels == o.labels;
    }
};

/// Complex amplitude vector over the tensor product of a CompositeSpace.
struct StateVector {
    CompositeSpace space;
    Vec amps;

    double norm() const { return amps.norm(); }
    StateVector normalized() const;
};

/// Dense complex square matrix acting on one subsystem or the full space.
struct OperatorMatrix {
    Mat entries;
    bool unitary_flag = false;

    Eigen::Index dim() const { return entries.rows(); }
};

/// Kronecker product of states in list order; result normalized.
StateVector tensor_states(const std::vector<StateVector>& parts);

/// I ⊗ ... ⊗ op ⊗ ... ⊗ I with op on subsystem `target`.
OperatorMatrix embed(const OperatorMatrix& op, const CompositeSpace& space, int target);

/// Full-space matrix-vector product.
StateVector apply(const OperatorMatrix& op, const StateVector& state);

/// Applies op to the listed subsystems (op basis order = target list order)
/// without materializing the full-space matrix.
StateVector apply_local(const OperatorMatrix& op, const StateVector& state,
                        const std::vector<int>& targets);

struct MeasureOutcome {
    int level;
    double probability;
    StateVector post; // renormalized projection, subsystem kept
};

/// Total projective measurement of one subsystem. Probabilities sum to 1;
/// outcomes below kBranchEpsilon are omitted.
std::vector<MeasureOutcome> measure_subsystem(const StateVector& state, int target);

/// Born probability and renormalized conditional state with the measured
/// subsystem removed from the space.
std::pair<double, StateVector> post_select(const StateVector& state, int target, int level);

/// |<target|state>|^2, global-phase invariant.
double fidelity(const StateVector& state, const StateVector& target);

/// ||(<target| ⊗ I)|state>||^2: overlap of the marginal on `targets` with a
/// pure target state on those subsystems.
double subsystem_fidelity(const StateVector& state, const std::vector<int>& targets,
                          const StateVector& target_state);

/// Product basis vector |levels[0], levels[1], ...>.
StateVector basis_state(const CompositeSpace& space, const std::vector<int>& levels);

/// Tensors a single-subsystem state into position `pos` of an existing state.
StateVector insert_subsystem(const StateVector& state, std::size_t pos,
                             const StateVector& part);

/// Requires the state to factor as (rest) ⊗ (target subsystem); replaces the
/// target factor with `fresh` (same dimension as the old one is not required).
/// Throws ProtocolError when the target subsystem is entangled with the rest.
StateVector replace_product_factor(const StateVector& state, int target,
                                   const Vec& fresh, const std::string& fresh_label);

} // namespace qswap
