#![allow(dead_code)]

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestError, TestRng, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use schur_core::abgroup::{kunneth, AbelianGroup};
use schur_core::be::{build_be_data, build_be_data_with_basis, multiplier_from_data, Span};
use schur_core::bounds::{FactKind, Ledger, NewFact, Provenance};
use schur_core::catalog::Catalog;
use schur_core::hopf::multiplier_via_tails;
use schur_core::oracle::h2_trivial_coeffs;
use schur_core::pcgroup::{abelianization, cayley_table, direct_product, dsl, NormalWord, PcPresentation};

/// A random class <= 2 group: `k` generators of order `p` over `m` central
/// generators of order `p`, with random commutator and power tails.
#[derive(Clone, Debug)]
pub struct Class2 {
    pub p: u64,
    pub k: usize,
    pub m: usize,
    pub comm: Vec<Vec<u32>>,
    pub pow: Vec<Vec<u32>>,
}

impl Class2 {
    pub fn text(&self) -> String {
        let mut s = String::new();
        for i in 0..self.k {
            s += &format!("gen x{i} p\n");
        }
        for j in 0..self.m {
            s += &format!("gen z{j} p\n");
        }
        let word = |e: &[u32]| -> Option<String> {
            let parts: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(j, x)| format!("z{j}^{x}"))
                .collect();
            (!parts.is_empty()).then(|| parts.join(" * "))
        };
        let mut pair = 0;
        for i in 0..self.k {
            for j in i + 1..self.k {
                if let Some(w) = word(&self.comm[pair]) {
                    s += &format!("comm x{j} x{i} = {w}\n");
                }
                pair += 1;
            }
            if let Some(w) = word(&self.pow[i]) {
                s += &format!("pow x{i} = {w}\n");
            }
        }
        s
    }

    pub fn pres(&self) -> PcPresentation {
        dsl::parse(&self.text(), self.p).expect("class-2 presentations are consistent")
    }
}

fn class2(primes: Vec<u64>, max_log: impl Fn(u64) -> usize + Clone + 'static) -> impl Strategy<Value = Class2> {
    prop::sample::select(primes).prop_flat_map(move |p| {
        let max = max_log(p);
        (1..=max.min(4)).prop_flat_map(move |k| {
            (0..=(max - k).min(3)).prop_flat_map(move |m| {
                let pairs = k * (k - 1) / 2;
                let digit = 0..p as u32;
                (
                    prop::collection::vec(prop::collection::vec(digit.clone(), m), pairs),
                    prop::collection::vec(prop::collection::vec(digit, m), k),
                )
                    .prop_map(move |(comm, pow)| Class2 { p, k, m, comm, pow })
            })
        })
    })
}

const SMALL_CATALOG: &[(&str, u64)] = &[
    ("D8", 2),
    ("Q8", 2),
    ("Xvii_X", 2),
    ("Xvi_core", 2),
    ("ES_p_p3", 3),
    ("ES_p2_p3", 3),
    ("Phi2_22", 3),
    ("Phi2_31", 3),
    ("Phi3_1_4", 3),
    ("Phi2_211b", 3),
];

/// Random class-2 groups and small catalog groups of order at most `max`.
pub fn small_group(max: u64) -> BoxedStrategy<PcPresentation> {
    let log = move |p: u64| {
        let mut e = 0;
        while p.pow(e + 1) <= max {
            e += 1;
        }
        e as usize
    };
    let cat: Vec<PcPresentation> = SMALL_CATALOG
        .iter()
        .map(|&(id, p)| Catalog::builtin().load(id, p).unwrap().pres)
        .filter(|g| g.order_u64().is_some_and(|n| n <= max))
        .collect();
    let primes: Vec<u64> = [2, 3, 5].into_iter().filter(|&p| p <= max).collect();
    prop_oneof![
        3 => class2(primes, log).prop_map(|c| c.pres()),
        1 => prop::sample::select(cat),
    ]
    .boxed()
}

fn runner(cases: u32) -> TestRunner {
    let config = Config {
        cases,
        max_global_rejects: 100_000,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn finish<T: std::fmt::Debug>(r: Result<(), TestError<T>>) -> Result<(), String> {
    r.map_err(|e| e.to_string())
}

fn random_word(g: &PcPresentation, seed: &[u32]) -> NormalWord {
    NormalWord(
        g.relative_orders()
            .iter()
            .zip(seed.iter().cycle())
            .map(|(&r, &s)| s % r)
            .collect(),
    )
}

/// Collecting a normal word returns it; products of normal words are
/// normal words and associate.
pub fn collection_idempotence(cases: u32) -> Result<(), String> {
    let strat = (small_group(3u64.pow(5)), prop::collection::vec(any::<u32>(), 3..12));
    finish(runner(cases).run(&strat, |(g, seed)| {
        let words: Vec<NormalWord> = (0..3).map(|k| random_word(&g, &seed[k..])).collect();
        for w in &words {
            let letters: Vec<(usize, i64)> = w.0.iter().enumerate().map(|(i, &e)| (i, e as i64)).collect();
            prop_assert_eq!(&g.collect(&letters), w);
            prop_assert_eq!(&g.mul(w, &g.identity()), w);
        }
        let (a, b, c) = (&words[0], &words[1], &words[2]);
        let ab = g.mul(a, b);
        for (x, &r) in ab.0.iter().zip(g.relative_orders()) {
            prop_assert!(*x < r);
        }
        prop_assert_eq!(g.mul(&ab, c), g.mul(a, &g.mul(b, c)));
        prop_assert!(g.mul(a, &g.inverse(a)).is_identity());
        Ok(())
    }))
}

/// Exhaustive associativity of the Cayley table for groups of order <= 32.
pub fn cayley_associativity(cases: u32) -> Result<(), String> {
    finish(runner(cases).run(&small_group(32), |g| {
        let t = cayley_table(&g).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let n = t.order();
        prop_assert!(t.is_latin());
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    prop_assert!(t.is_associative_at(a, b, c));
                }
            }
        }
        Ok(())
    }))
}

/// `H^2(G, Z_|G|)` does not depend on how the Cayley table is labelled.
pub fn oracle_relabeling(cases: u32) -> Result<(), String> {
    finish(runner(cases).run(&(small_group(32), any::<u64>()), |(g, seed)| {
        let t = cayley_table(&g).unwrap();
        let n = t.order();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut perm: Vec<usize> = (0..n).collect();
        for i in (2..n).rev() {
            let j = rng.gen_range(1..=i);
            perm.swap(i, j);
        }
        let m = n as u64;
        let h = h2_trivial_coeffs(&t, m).unwrap().h2;
        let h2 = h2_trivial_coeffs(&t.relabel(&perm), m).unwrap().h2;
        prop_assert_eq!(h, h2);
        Ok(())
    }))
}

fn invertible_matrix(p: u64, d: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<u32>> {
    loop {
        let rows: Vec<Vec<u32>> = (0..d).map(|_| (0..d).map(|_| rng.gen_range(0..p as u32)).collect()).collect();
        let mut span = Span::new(p);
        if rows.iter().all(|r| span.add(r)) {
            return rows;
        }
    }
}

/// The multiplier from the linear-algebra method does not depend on the
/// basis chosen for `G/G'`.
pub fn be_basis_independence(cases: u32) -> Result<(), String> {
    let strat = (class2(vec![3, 5, 7], |p| if p == 3 { 7 } else { 5 }), any::<u64>());
    finish(runner(cases).run(&strat, |(c, seed)| {
        let g = c.pres();
        let Ok(data) = build_be_data(&g) else {
            return Err(TestCaseError::reject("hypotheses fail"));
        };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let basis = invertible_matrix(c.p, data.dv, &mut rng);
        let other = build_be_data_with_basis(&g, Some(&basis)).unwrap();
        let m1 = multiplier_from_data(&data).unwrap().invariants;
        let m2 = multiplier_from_data(&other).unwrap().invariants;
        prop_assert_eq!(&m1, &m2);
        prop_assert_eq!(m1, multiplier_via_tails(&g).unwrap().multiplier);
        Ok(())
    }))
}

fn abelian(p: u64) -> impl Strategy<Value = AbelianGroup> {
    prop::collection::vec(0u32..4, 0..4).prop_map(move |es| schur_core::abgroup::from_orders(&es.iter().map(|&e| p.pow(e)).collect::<Vec<_>>()))
}

/// `M(A × B) = M(B × A)`, for the formula and for the groups.
pub fn kunneth_symmetry(cases: u32) -> Result<(), String> {
    let groups = prop::sample::select(vec![2u64, 3]).prop_flat_map(|p| {
        let cat: Vec<PcPresentation> = SMALL_CATALOG
            .iter()
            .filter(|&&(_, q)| q == p)
            .map(|&(id, _)| Catalog::builtin().load(id, p).unwrap().pres)
            .collect();
        let g = prop_oneof![
            class2(vec![p], |_| 3).prop_map(|c| c.pres()),
            prop::sample::select(cat),
        ];
        (g.clone(), g, abelian(p), abelian(p), abelian(p), abelian(p))
    });
    finish(runner(cases).run(&groups, |(g, h, ma, mb, a, b)| {
        prop_assert_eq!(kunneth(&ma, &mb, &a, &b), kunneth(&mb, &ma, &b, &a));
        let gh = multiplier_via_tails(&direct_product(&g, &h).unwrap()).unwrap().multiplier;
        let hg = multiplier_via_tails(&direct_product(&h, &g).unwrap()).unwrap().multiplier;
        let mg = multiplier_via_tails(&g).unwrap().multiplier;
        let mh = multiplier_via_tails(&h).unwrap().multiplier;
        prop_assert_eq!(&gh, &hg);
        prop_assert_eq!(gh, kunneth(&mg, &mh, &abelianization(&g), &abelianization(&h)));
        Ok(())
    }))
}

#[derive(Clone, Debug)]
pub struct Op {
    kind: FactKind,
    exponent: u32,
    subject: bool,
}

/// Accepted facts only tighten bounds, bounds never cross, and rejected
/// facts leave the ledger untouched.
pub fn ledger_monotonicity(cases: u32) -> Result<(), String> {
    let op = (0..3usize, 0u32..12, any::<bool>()).prop_map(|(k, exponent, subject)| Op {
        kind: [FactKind::Upper, FactKind::Lower, FactKind::Exact][k],
        exponent,
        subject,
    });
    finish(runner(cases).run(&prop::collection::vec(op, 1..30), |ops| {
        let mut l = Ledger::new(3);
        for op in ops {
            let name = if op.subject { "G" } else { "H" };
            let before = l.clone();
            let up = l.min_upper(name).map(|f| f.exponent);
            let lo = l.max_lower(name).map(|f| f.exponent);
            let r = l.add(NewFact::new(name, op.kind, op.exponent, Provenance::Assumed("p".into())));
            match r {
                Ok(id) => {
                    prop_assert_eq!(l.facts().len(), before.facts().len() + 1);
                    prop_assert_eq!(id, before.facts().len());
                    prop_assert_eq!(&l.facts()[..id], before.facts());
                }
                Err(_) => {
                    prop_assert_eq!(l.facts(), before.facts());
                    let crosses_up = op.kind != FactKind::Upper && up.is_some_and(|u| op.exponent > u);
                    let crosses_lo = op.kind != FactKind::Lower && lo.is_some_and(|x| op.exponent < x);
                    prop_assert!(crosses_up || crosses_lo);
                }
            }
            let up2 = l.min_upper(name).map(|f| f.exponent);
            let lo2 = l.max_lower(name).map(|f| f.exponent);
            if let (Some(a), Some(b)) = (up, up2) {
                prop_assert!(b <= a);
            }
            if let (Some(a), Some(b)) = (lo, lo2) {
                prop_assert!(b >= a);
            }
            if let (Some(u), Some(x)) = (up2, lo2) {
                prop_assert!(x <= u);
            }
        }
        Ok(())
    }))
}

pub const PROPERTIES: &[(&str, fn(u32) -> Result<(), String>)] = &[
    ("collection idempotence", collection_idempotence),
    ("Cayley associativity (exhaustive, order <= 32)", cayley_associativity),
    ("oracle relabeling invariance", oracle_relabeling),
    ("linear-algebra basis independence", be_basis_independence),
    ("Kunneth symmetry", kunneth_symmetry),
    ("ledger monotonicity", ledger_monotonicity),
];
