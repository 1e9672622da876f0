//! Sum and product composition of networks.
//!
//! The sum rule multiplies networks: `Q(U1 + … + Ur) = Q(U1)…Q(Ur)`. The
//! product rule threads successive networks together with the connector
//! `C = I_R ⊗ c`:
//!
//! ```text
//! Q(U1 U2 … Ur) = I + C† (C Q(U1)) (C Q(U2)) … (C Q(Ur)) C C†
//! ```
//!
//! `Ur` acts first on a state, as in ordinary operator composition.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{check_dense, tensor, ComplexMatrix, StateVector};
use crate::qcpu::auxiliary::Connector;
use crate::qcpu::network::{qcpu_of, QcpuNetwork};

/// Networks whose `register ⊗ aux` dimension exceeds this are not composed
/// densely; every operand costs two dense products.
pub const COMPOSE_DIM_CAP: usize = 1 << 8;

/// One element of a connector chain, in written (left-to-right) order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TraceStep {
    /// `C†`
    Raise,
    /// `C`
    Lower,
    /// `Q(U_index)`, 1-based.
    Block { index: usize, label: String },
    /// The trailing `C C†`.
    Prepare,
}

impl TraceStep {
    pub fn is_connector(&self) -> bool {
        !matches!(self, TraceStep::Block { .. })
    }
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TraceStep::Raise => f.write_str("C†"),
            TraceStep::Lower => f.write_str("C"),
            TraceStep::Block { label, .. } => write!(f, "Q({label})"),
            TraceStep::Prepare => f.write_str("CC†"),
        }
    }
}

/// Dense result of a product composition plus the chain that built it.
#[derive(Clone, Debug, PartialEq)]
pub struct ComposedNetwork {
    pub operator: ComplexMatrix,
    pub trace: Vec<TraceStep>,
}

impl ComposedNetwork {
    pub fn register_dim(&self) -> usize {
        self.operator.rows() / 2
    }

    pub fn block_count(&self) -> usize {
        self.trace.iter().filter(|s| !s.is_connector()).count()
    }

    /// The register operator written onto the aux `|0> -> |1>` transition.
    pub fn register_block(&self) -> ComplexMatrix {
        aux_block(&self.operator, 1, 0)
    }
}

/// Register block `<to|_A X |from>_A` of an operator on `register ⊗ aux`.
pub fn aux_block(op: &ComplexMatrix, to: usize, from: usize) -> ComplexMatrix {
    let n = op.rows() / 2;
    let mut out = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            out[(i, j)] = op[(2 * i + to, 2 * j + from)];
        }
    }
    out
}

/// Product of `Q(U)` for every operand; the result is `Q(ΣU)`.
pub fn sum_compose(networks: &[QcpuNetwork]) -> Result<QcpuNetwork> {
    let (first, rest) = networks.split_first().ok_or(Error::EmptyProduct)?;
    let shape = first.shape();
    if let Some(bad) = rest.iter().find(|n| n.shape() != shape) {
        return Err(Error::ShapeMismatch(shape.dim(), bad.shape().dim()));
    }
    let label = networks
        .iter()
        .map(|n| n.label.as_str())
        .collect::<Vec<_>>()
        .join(" + ");
    QcpuNetwork::from_factors(
        shape,
        networks.iter().flat_map(|n| n.factors().iter().copied()),
        label,
    )
}

/// Builds the connector chain for `[U1, …, Ur]` and returns
/// `C† (∏ C Q(Uj)) C C†`, without the leading identity.
fn connector_chain(
    operands: &[(String, ComplexMatrix)],
) -> Result<(ComplexMatrix, Vec<TraceStep>)> {
    let (_, first) = operands.first().ok_or(Error::EmptyProduct)?;
    let dim = first.rows();
    for (_, u) in operands {
        if !u.is_square() {
            return Err(Error::NotSquare {
                rows: u.rows(),
                cols: u.cols(),
            });
        }
        if u.rows() != dim {
            return Err(Error::ShapeMismatch(dim, u.rows()));
        }
    }
    let full = 2 * dim;
    if full > COMPOSE_DIM_CAP {
        return Err(Error::DenseCapExceeded {
            dim: full,
            cap: COMPOSE_DIM_CAP,
        });
    }
    let conn = Connector::new(dim);
    let lower = conn.lower();

    let mut trace = vec![TraceStep::Raise];
    let mut acc = conn.raise();
    for (j, (label, u)) in operands.iter().enumerate() {
        let q = qcpu_of(u)?.closed_form()?;
        acc = acc.matmul(&lower)?.matmul(&q)?;
        trace.push(TraceStep::Lower);
        trace.push(TraceStep::Block {
            index: j + 1,
            label: label.clone(),
        });
    }
    acc = acc.matmul(&conn.prepare())?;
    trace.push(TraceStep::Prepare);
    Ok((acc, trace))
}

fn default_labels(us: &[ComplexMatrix]) -> Vec<(String, ComplexMatrix)> {
    us.iter()
        .enumerate()
        .map(|(j, u)| (format!("U{}", j + 1), u.clone()))
        .collect()
}

/// `Q(U1 U2 … Ur)` through connectors. The operator equals
/// `I + (U1 ⋯ Ur) ⊗ c_dag`.
pub fn product_compose(us: &[ComplexMatrix]) -> Result<ComposedNetwork> {
    product_compose_labeled(&default_labels(us))
}

pub fn product_compose_labeled(operands: &[(String, ComplexMatrix)]) -> Result<ComposedNetwork> {
    let (chain, trace) = connector_chain(operands)?;
    let operator = ComplexMatrix::identity(chain.rows()).add(&chain)?;
    Ok(ComposedNetwork { operator, trace })
}

/// The fully multiplicative form `I_input ⊗ [C† (∏ C Q(Uj)) C C†]_out`.
///
/// Prepared on `|Ψ>_input ⊗ (|Ψ> ⊗ |0>_A)_out`, the input copy is left
/// alone and the out block becomes `(∏ Uj)|Ψ> ⊗ |1>_A`. Unlike the
/// product rule there is no leading identity, so the out block annihilates
/// anything already on the aux `|1>` branch.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalableNetwork {
    pub input_dim: usize,
    pub out_operator: ComplexMatrix,
    pub trace: Vec<TraceStep>,
}

impl ScalableNetwork {
    pub fn block_count(&self) -> usize {
        self.trace.iter().filter(|s| !s.is_connector()).count()
    }

    pub fn register_block(&self) -> ComplexMatrix {
        aux_block(&self.out_operator, 1, 0)
    }

    /// `I_input ⊗ out_operator`, only for small totals.
    pub fn total_operator(&self) -> Result<ComplexMatrix> {
        let dim = self.input_dim * self.out_operator.rows();
        check_dense(dim)?;
        Ok(tensor(
            &ComplexMatrix::identity(self.input_dim),
            &self.out_operator,
        ))
    }

    /// Applies the network to a state on `input ⊗ out ⊗ aux` block by block.
    pub fn apply(&self, state: &StateVector) -> Result<StateVector> {
        let block = self.out_operator.rows();
        if state.dim() != self.input_dim * block {
            return Err(Error::DimensionMismatch {
                op: "ScalableNetwork::apply",
                left: (self.input_dim * block, self.input_dim * block),
                right: (state.dim(), 1),
            });
        }
        let mut out = Vec::with_capacity(state.dim());
        for chunk in state.amplitudes().chunks_exact(block) {
            let sub = StateVector::from_amplitudes(chunk.to_vec());
            out.extend(self.out_operator.apply(&sub)?.into_amplitudes());
        }
        Ok(StateVector::from_amplitudes(out))
    }

    /// Runs the network on the prepared state for `psi` and returns the
    /// untouched input copy together with the out-block state.
    pub fn apply_prepared(&self, psi: &StateVector) -> Result<(StateVector, StateVector)> {
        if psi.dim() != self.input_dim {
            return Err(Error::DimensionMismatch {
                op: "ScalableNetwork::apply_prepared",
                left: (self.input_dim, 1),
                right: (psi.dim(), 1),
            });
        }
        let prepared_out = psi.tensor(&StateVector::basis(0, 2)?);
        Ok((psi.clone(), self.out_operator.apply(&prepared_out)?))
    }
}

pub fn scalable_product(us: &[ComplexMatrix]) -> Result<ScalableNetwork> {
    scalable_product_labeled(&default_labels(us))
}

pub fn scalable_product_labeled(operands: &[(String, ComplexMatrix)]) -> Result<ScalableNetwork> {
    let (out_operator, trace) = connector_chain(operands)?;
    Ok(ScalableNetwork {
        input_dim: out_operator.rows() / 2,
        out_operator,
        trace,
    })
}

/// Projects a `register ⊗ aux` state onto aux `outcome` (0 or 1).
///
/// Returns the renormalised register state and the squared norm of the
/// projection.
pub fn postselect_aux(state: &StateVector, outcome: usize) -> Result<(StateVector, f64)> {
    if !state.dim().is_multiple_of(2) || state.dim() < 2 {
        return Err(Error::DimensionMismatch {
            op: "postselect_aux",
            left: (2, 1),
            right: (state.dim(), 1),
        });
    }
    if outcome > 1 {
        return Err(Error::IndexOutOfRange {
            index: outcome,
            dim: 2,
        });
    }
    let branch = StateVector::from_amplitudes(
        state
            .amplitudes()
            .iter()
            .skip(outcome)
            .step_by(2)
            .copied()
            .collect(),
    );
    let weight = branch.norm_sqr();
    if weight == 0.0 {
        return Err(Error::ZeroProbability);
    }
    Ok((branch.normalized()?, weight))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{hadamard, pauli_x, pauli_z, StateVector, C64, ONE};
    use crate::qcpu::network::nilpotent_exp;

    #[test]
    fn sum_rule_on_paulis() {
        let sum =
            sum_compose(&[qcpu_of(&pauli_x()).unwrap(), qcpu_of(&pauli_z()).unwrap()]).unwrap();
        let want = hadamard().scale(C64::new(2f64.sqrt(), 0.0));
        assert!(sum.matrix().approx_eq(&want, 1e-15));
    }

    #[test]
    fn sum_rule_single_and_cancelling() {
        let u = qcpu_of(&hadamard()).unwrap();
        assert_eq!(
            sum_compose(std::slice::from_ref(&u)).unwrap().factors(),
            u.factors()
        );
        let neg = qcpu_of(&hadamard().scale(-ONE)).unwrap();
        let zero = sum_compose(&[u, neg]).unwrap();
        assert!(zero.factors().is_empty());
        assert_eq!(zero.closed_form().unwrap(), ComplexMatrix::identity(4));
    }

    #[test]
    fn sum_rule_rejects_mixed_shapes() {
        let a = qcpu_of(&pauli_x()).unwrap();
        let b = qcpu_of(&ComplexMatrix::identity(4)).unwrap();
        assert!(matches!(
            sum_compose(&[a, b]),
            Err(Error::ShapeMismatch(2, 4))
        ));
        assert!(matches!(sum_compose(&[]), Err(Error::EmptyProduct)));
    }

    #[test]
    fn product_rule_single_operand() {
        let composed = product_compose(&[hadamard()]).unwrap();
        let q = qcpu_of(&hadamard()).unwrap().closed_form().unwrap();
        assert!(composed.operator.approx_eq(&q, 1e-15));
    }

    #[test]
    fn product_rule_pauli_pair() {
        let composed = product_compose(&[pauli_x(), pauli_z()]).unwrap();
        let xz = ComplexMatrix::from_real_rows(&[&[0.0, -1.0], &[1.0, 0.0]]);
        assert_eq!(composed.operator, nilpotent_exp(&xz));
        let ids = vec![ComplexMatrix::identity(2); 3];
        assert_eq!(
            product_compose(&ids).unwrap().operator,
            nilpotent_exp(&ComplexMatrix::identity(2))
        );
    }

    #[test]
    fn product_rule_errors() {
        assert!(matches!(product_compose(&[]), Err(Error::EmptyProduct)));
        assert!(matches!(
            product_compose(&[pauli_x(), ComplexMatrix::identity(4)]),
            Err(Error::ShapeMismatch(2, 4))
        ));
        assert!(matches!(
            product_compose(&[ComplexMatrix::identity(256)]),
            Err(Error::DenseCapExceeded { .. })
        ));
    }

    #[test]
    fn trace_records_connector_chain() {
        let composed = product_compose(&[pauli_x(), pauli_z()]).unwrap();
        let rendered: Vec<String> = composed.trace.iter().map(|s| s.to_string()).collect();
        assert_eq!(rendered, ["C†", "C", "Q(U1)", "C", "Q(U2)", "CC†"]);
        assert_eq!(composed.block_count(), 2);
    }

    #[test]
    fn scalable_product_hadamard() {
        let net = scalable_product(&[hadamard()]).unwrap();
        let (input, out) = net
            .apply_prepared(&StateVector::basis(0, 2).unwrap())
            .unwrap();
        assert_eq!(input, StateVector::basis(0, 2).unwrap());
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let want = StateVector::from_amplitudes(vec![
            C64::new(0.0, 0.0),
            C64::new(h, 0.0),
            C64::new(0.0, 0.0),
            C64::new(h, 0.0),
        ]);
        assert!(out.max_abs_diff(&want).unwrap() < 1e-15);

        let total = net.total_operator().unwrap();
        let prepared = input.tensor(
            &StateVector::basis(0, 2)
                .unwrap()
                .tensor(&StateVector::basis(0, 2).unwrap()),
        );
        let via_total = total.apply(&prepared).unwrap();
        assert!(via_total.max_abs_diff(&input.tensor(&out)).unwrap() < 1e-15);
        assert!(
            via_total
                .max_abs_diff(&net.apply(&prepared).unwrap())
                .unwrap()
                < 1e-15
        );
    }

    #[test]
    fn scalable_product_involution_and_empty() {
        let net = scalable_product(&[pauli_x(), pauli_x()]).unwrap();
        let (_, out) = net
            .apply_prepared(&StateVector::basis(1, 2).unwrap())
            .unwrap();
        assert_eq!(out, StateVector::basis(3, 4).unwrap());
        assert!(matches!(scalable_product(&[]), Err(Error::EmptyProduct)));
    }

    #[test]
    fn scalable_out_block_annihilates_aux_one() {
        let net = scalable_product(&[hadamard()]).unwrap();
        let on_one = StateVector::basis(1, 4).unwrap();
        let out = net.out_operator.apply(&on_one).unwrap();
        assert_eq!(out.norm_sqr(), 0.0);
    }

    #[test]
    fn postselection() {
        let q = qcpu_of(&pauli_x()).unwrap().closed_form().unwrap();
        let s = q.apply(&StateVector::basis(0, 4).unwrap()).unwrap();
        let (one, w1) = postselect_aux(&s, 1).unwrap();
        assert_eq!((one, w1), (StateVector::basis(1, 2).unwrap(), 1.0));
        let (zero, w0) = postselect_aux(&s, 0).unwrap();
        assert_eq!((zero, w0), (StateVector::basis(0, 2).unwrap(), 1.0));

        let qh = qcpu_of(&hadamard()).unwrap().closed_form().unwrap();
        let s = qh.apply(&StateVector::basis(0, 4).unwrap()).unwrap();
        let (plus, w) = postselect_aux(&s, 1).unwrap();
        assert!((w - 1.0).abs() < 1e-15);
        assert!(plus.max_abs_diff(&StateVector::uniform(2)).unwrap() < 1e-15);

        let none = StateVector::basis(0, 4).unwrap();
        assert!(matches!(
            postselect_aux(&none, 1),
            Err(Error::ZeroProbability)
        ));
        assert!(postselect_aux(&StateVector::basis(0, 3).unwrap(), 0).is_err());
    }
}
