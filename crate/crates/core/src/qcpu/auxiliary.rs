use crate::linalg::{outer, tensor, ComplexMatrix};

/// Ladder operators and projectors of the single auxiliary qubit.
///
/// `c = |0><1|` lowers, `c_dag = |1><0|` raises. They satisfy
/// `c² = c_dag² = 0` and `c c_dag + c_dag c = I`, so they behave as a
/// fermionic annihilation/creation pair.
#[derive(Clone, Debug, PartialEq)]
pub struct AuxiliaryAlgebra {
    pub c: ComplexMatrix,
    pub c_dag: ComplexMatrix,
    pub p0: ComplexMatrix,
    pub p1: ComplexMatrix,
}

impl AuxiliaryAlgebra {
    pub fn new() -> Self {
        Self {
            c: outer(0, 1, 2).expect("2x2 indices"),
            c_dag: outer(1, 0, 2).expect("2x2 indices"),
            p0: outer(0, 0, 2).expect("2x2 indices"),
            p1: outer(1, 1, 2).expect("2x2 indices"),
        }
    }

    /// `c c_dag + c_dag c`.
    pub fn anticommutator(&self) -> ComplexMatrix {
        let a = self.c.matmul(&self.c_dag).expect("2x2");
        let b = self.c_dag.matmul(&self.c).expect("2x2");
        a.add(&b).expect("2x2")
    }
}

impl Default for AuxiliaryAlgebra {
    fn default() -> Self {
        Self::new()
    }
}

/// The auxiliary ladder operators lifted onto `register ⊗ aux`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Connector {
    pub register_dim: usize,
}

impl Connector {
    pub fn new(register_dim: usize) -> Self {
        Self { register_dim }
    }

    /// `C = I_R ⊗ c`.
    pub fn lower(&self) -> ComplexMatrix {
        self.lift(&AuxiliaryAlgebra::new().c)
    }

    /// `C† = I_R ⊗ c_dag`.
    pub fn raise(&self) -> ComplexMatrix {
        self.lift(&AuxiliaryAlgebra::new().c_dag)
    }

    /// `C C† = I_R ⊗ |0><0|`.
    pub fn prepare(&self) -> ComplexMatrix {
        self.lift(&AuxiliaryAlgebra::new().p0)
    }

    fn lift(&self, aux: &ComplexMatrix) -> ComplexMatrix {
        tensor(&ComplexMatrix::identity(self.register_dim), aux)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fermionic_relations_hold_exactly() {
        let a = AuxiliaryAlgebra::new();
        let zero = ComplexMatrix::zeros(2, 2);
        assert_eq!(a.c.matmul(&a.c).unwrap(), zero);
        assert_eq!(a.c_dag.matmul(&a.c_dag).unwrap(), zero);
        assert_eq!(a.anticommutator(), ComplexMatrix::identity(2));
        assert_eq!(a.c.dagger(), a.c_dag);
        assert_eq!(a.c.matmul(&a.c_dag).unwrap(), a.p0);
        assert_eq!(a.c_dag.matmul(&a.c).unwrap(), a.p1);
    }

    #[test]
    fn lifted_connectors() {
        let conn = Connector::new(4);
        let lower = conn.lower();
        assert_eq!(lower.dims(), (8, 8));
        assert_eq!(lower.dagger(), conn.raise());
        assert_eq!(lower.matmul(&conn.raise()).unwrap(), conn.prepare());
    }
}
