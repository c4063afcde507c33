//! Parse a pc presentation, collect words, and catch an inconsistent one.
use schur_core::pcgroup::{check_consistency, dsl};

const MODULAR: &str = "
# M(p^3) in refined form: a^p = c central, b acts by a -> a^(1+p)
gen b p
gen a p
gen c p
pow a = c
comm a b = c
";

fn main() {
    let p = 5;
    let g = dsl::parse(MODULAR, p).expect("consistent");
    println!("{g}");
    let b = g.generator(0);
    let a = g.generator(1);
    let ba = g.mul(&b, &a);
    println!("b*a = {}", g.format_word(&ba));
    println!("a^{p} = {}", g.format_word(&g.pow(&a, p)));
    println!("[a,b] = {}", g.format_word(&g.commutator(&a, &b)));
    println!("order of a*b = {}", g.element_order(&g.mul(&a, &b)));

    let bad = "gen x p\ngen y p\ngen z p\npow x = y\ncomm y x = z\n";
    let unchecked = dsl::parse_unchecked(bad, p).expect("parses");
    match check_consistency(&unchecked).first_failure() {
        Some(f) => println!("inconsistent at overlap {}", f.overlap),
        None => println!("consistent"),
    }
    println!("parse(): {}", dsl::parse(bad, p).unwrap_err());
}
