use super::*;
use crate::abgroup::from_orders;
use crate::pcgroup::cayley_table;
use crate::pcgroup::dsl::parse;

fn table(text: &str, p: u64) -> CayleyTable {
    cayley_table(&parse(text, p).unwrap()).unwrap()
}

/// Counts normalized cocycles and coboundaries by enumeration.
fn brute_h2_order(t: &CayleyTable, m: u32) -> u64 {
    let n = t.order();
    let vars = (n - 1) * (n - 1);
    let total = (m as u64).pow(vars as u32);
    let mut cocycles = 0u64;
    let mut f = vec![0u32; n * n];
    for code in 0..total {
        let mut c = code;
        for x in 1..n {
            for y in 1..n {
                f[x * n + y] = (c % m as u64) as u32;
                c /= m as u64;
            }
        }
        let ok = (0..n).all(|x| {
            (0..n).all(|y| {
                (0..n).all(|z| {
                    (f[x * n + y] + f[t.mul(x, y) * n + z]) % m == (f[y * n + z] + f[x * n + t.mul(y, z)]) % m
                })
            })
        });
        if ok {
            cocycles += 1;
        }
    }
    let mut cob = std::collections::HashSet::new();
    let g_total = (m as u64).pow((n - 1) as u32);
    for code in 0..g_total {
        let mut g = vec![0u32; n];
        let mut c = code;
        for v in g.iter_mut().skip(1) {
            *v = (c % m as u64) as u32;
            c /= m as u64;
        }
        let img: Vec<u32> = (1..n)
            .flat_map(|x| (1..n).map(move |y| (x, y)))
            .map(|(x, y)| (g[x] + g[y] + m - g[t.mul(x, y)]) % m)
            .collect();
        cob.insert(img);
    }
    cocycles / cob.len() as u64
}

#[test]
fn trivial_group() {
    let t = cayley_table(&PcPresentation::trivial(2).unwrap()).unwrap();
    assert!(h2_trivial_coeffs(&t, 4).unwrap().h2.is_trivial());
}

#[test]
fn cyclic_two() {
    let t = table("gen a 2", 2);
    assert_eq!(brute_h2_order(&t, 2), 2);
    assert_eq!(h2_trivial_coeffs(&t, 2).unwrap().h2, AbelianGroup::cyclic(2, 1));
    assert_eq!(h2_full_system(&t, 2).unwrap().h2, AbelianGroup::cyclic(2, 1));
}

#[test]
fn klein_four_mod_four() {
    let t = table("gen a 2\ngen b 2", 2);
    assert_eq!(brute_h2_order(&t, 4), 8);
    let r = h2_trivial_coeffs(&t, 4).unwrap();
    assert_eq!(r.log_order(), 3);
    assert_eq!(r.h2, from_orders(&[2, 2, 2]));
    assert_eq!(h2_full_system(&t, 4).unwrap().h2, r.h2);
}

#[test]
fn non_prime_power_modulus_rejected() {
    let t = table("gen a 2", 2);
    assert_eq!(h2_trivial_coeffs(&t, 6), Err(OracleError::NotPrimePower(6)));
}

#[test]
fn budget_is_enforced() {
    let t = table("gen a 2\ngen b 2\ngen c 2", 2);
    assert!(matches!(
        h2_trivial_coeffs_with_budget(&t, 8, 1000),
        Err(OracleError::Budget { .. })
    ));
}

#[test]
fn reduced_system_matches_full_system() {
    let groups = [
        ("gen b 2\ngen a 2\ngen c 2\npow b = c\ncomm a b = c", 2u64, 8u64),
        ("gen x 2\ngen y 2\ngen z 2\npow x = z\npow y = z\ncomm y x = z", 2, 8),
        ("gen a 3\ngen b 3", 3, 9),
        ("gen a 2\ngen b 2\ngen c 2\ngen d 2", 2, 16),
        ("gen a 2\ngen b 2\ngen c 2\npow a = c", 2, 8),
    ];
    for (text, p, m) in groups {
        let t = table(text, p);
        let a = h2_trivial_coeffs(&t, m).unwrap();
        let b = h2_full_system(&t, m).unwrap();
        assert_eq!(a.h2, b.h2, "{text}");
    }
}

#[test]
fn multipliers_of_order_eight() {
    let d8 = parse("gen b 2\ngen a 2\ngen c 2\npow b = c\ncomm a b = c", 2).unwrap();
    assert_eq!(multiplier_via_oracle(&d8).unwrap().invariants, AbelianGroup::cyclic(2, 1));
    let q8 = parse("gen x 2\ngen y 2\ngen z 2\npow x = z\npow y = z\ncomm y x = z", 2).unwrap();
    assert!(multiplier_via_oracle(&q8).unwrap().invariants.is_trivial());
}

#[test]
fn maximal_class_order_81() {
    let g = parse(
        "gen a p\ngen a1 p\ngen a2 p\ngen a3 p\ncomm a1 a = a2\ncomm a2 a = a3\n\
         pow a1 = a2^(-binom(p,2)) * a3^(-binom(p,3))",
        3,
    )
    .unwrap();
    let r = multiplier_via_oracle(&g).unwrap();
    assert_eq!(r.invariants, AbelianGroup::elementary(3, 2));
    assert_eq!(r.method, Method::Oracle);
    let h2 = r.h2.unwrap();
    assert_eq!(h2.log_order(), 2 + abelianization(&g).log_order(3));
}

#[test]
fn greedy_generators_are_small() {
    let t = table("gen a 2\ngen b 2\ngen c 2\npow a = b\npow b = c", 2);
    assert_eq!(greedy_generators(&t).len(), 1);
    let t = table("gen a p\ngen a1 p\ngen a2 p\ncomm a1 a = a2", 3);
    assert_eq!(greedy_generators(&t).len(), 2);
}
