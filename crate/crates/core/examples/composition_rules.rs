//! Builds `Q(U)` from nilpotent factors and checks the sum and product
//! rules on small random operators.
//!
//! cargo run --example composition_rules

use qcpu::harness::random::{on_aux_branch, random_matrix, random_state, random_unitary};
use qcpu::qcpu::{
    nilpotent_exp, postselect_aux, product_compose, qcpu_of, scalable_product, sum_compose,
};
use qcpu::sampling::SeededRng;
use qcpu::ComplexMatrix;

fn main() -> qcpu::Result<()> {
    let mut rng = SeededRng::new(7);
    let dim = 4;

    // One factor exp{U_mn |m><n| ⊗ c_dag} per nonzero entry; any order works.
    let u = random_matrix(&mut rng, dim);
    let net = qcpu_of(&u)?;
    let order = rng.permutation(net.factors().len());
    let shuffled = net.factor_product(Some(&order))?;
    println!(
        "Q(U): {} factors, |product - (I + U⊗c†)| = {:.1e}",
        net.factors().len(),
        shuffled.max_abs_diff(&nilpotent_exp(&u))?
    );

    // Sum rule: Q(A) Q(B) = Q(A + B).
    let a = random_matrix(&mut rng, dim);
    let b = random_matrix(&mut rng, dim);
    let joined = sum_compose(&[qcpu_of(&a)?, qcpu_of(&b)?])?;
    let direct = qcpu_of(&a.add(&b)?)?;
    println!(
        "sum rule:     |Q(A)Q(B) - Q(A+B)| = {:.1e}",
        joined.closed_form()?.max_abs_diff(&direct.closed_form()?)?
    );

    // Product rule through connectors: Q(A B C).
    let c = random_matrix(&mut rng, dim);
    let composed = product_compose(&[a.clone(), b.clone(), c.clone()])?;
    let abc = a.matmul(&b)?.matmul(&c)?;
    println!(
        "product rule: |composed - Q(ABC)| = {:.1e}, trace {}",
        composed.operator.max_abs_diff(&nilpotent_exp(&abc))?,
        composed
            .trace
            .iter()
            .map(|s| s.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    );

    // Acting on |ψ> ⊗ |0>: the aux |1> branch carries U|ψ>.
    let v = random_unitary(&mut rng, dim);
    let psi = random_state(&mut rng, dim);
    let out = qcpu_of(&v)?.apply(&on_aux_branch(&psi, 0))?;
    let (kept, weight) = postselect_aux(&out, 1)?;
    println!(
        "action:       aux=1 weight {weight:.3}, |kept - V|ψ>| = {:.1e}",
        kept.max_abs_diff(&v.apply(&psi)?)?
    );

    // The scalable form drops the leading identity.
    let scalable = scalable_product(&[v.clone(), v.dagger()])?;
    let (_, out) = scalable.apply_prepared(&psi)?;
    let (kept, _) = postselect_aux(&out, 1)?;
    println!(
        "scalable:     V V† |ψ> = |ψ> to {:.1e}, block is identity to {:.1e}",
        kept.max_abs_diff(&psi)?,
        scalable
            .register_block()
            .max_abs_diff(&ComplexMatrix::identity(dim))?
    );
    Ok(())
}
