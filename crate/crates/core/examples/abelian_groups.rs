//! Finite abelian groups: Smith normal form, tensor and exterior squares.
use schur_core::abgroup::{exterior_square, from_orders, kunneth, tensor, AbelianGroup, IntMatrix};

fn main() {
    let rel = IntMatrix::from_rows(&[vec![2i64, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
    let a = AbelianGroup::from_relations(&rel);
    println!("Z^3 / rows = {a}  (invariant factors {:?})", a.invariant_factors().iter().map(|f| f.to_string()).collect::<Vec<_>>());

    let x = from_orders(&[3, 9]);
    let y = from_orders(&[3, 27]);
    println!("{x} ⊗ {y} = {}", tensor(&x, &y));
    println!("∧²{y} = {}", exterior_square(&y));
    println!("M({x} × {y}) = {}", kunneth(&exterior_square(&x), &exterior_square(&y), &x, &y));
    println!("M(Z_3^4) order 3^{}", exterior_square(&AbelianGroup::elementary(3, 4)).log_order(3));
}
