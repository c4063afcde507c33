//! Full multiplication table of a small group and its basic checks.
use schur_core::catalog::Catalog;
use schur_core::pcgroup::cayley_table;

fn main() {
    let g = Catalog::builtin().load("Q8", 2).unwrap();
    let t = cayley_table(&g.pres).unwrap();
    let n = t.order();
    println!("|Q8| = {n}, latin square: {}", t.is_latin());
    let assoc = (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| t.is_associative_at(a, b, c))));
    println!("associative: {assoc}");
    for a in 0..n {
        let row: Vec<String> = t.row(a).iter().map(|x| x.to_string()).collect();
        println!("{:>2} | {}", a, row.join(" "));
    }
}
