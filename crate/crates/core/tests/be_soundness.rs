use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use schur_core::be::{build_be_data, BeData, Span};
use schur_core::catalog::Catalog;

const SAMPLES: usize = 100;

fn unit(d: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; d];
    v[i] = 1;
    v
}

fn sum(p: u64, a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(&x, &y)| ((x as u64 + y as u64) % p) as u32).collect()
}

fn x1(d: &BeData) -> Span {
    let mut s = Span::new(d.prime);
    for a in 0..d.dv {
        for b in a + 1..d.dv {
            for c in b + 1..d.dv {
                s.add(&d.jacobi(&unit(d.dv, a), &unit(d.dv, b), &unit(d.dv, c)));
            }
        }
    }
    s
}

fn x2(d: &BeData) -> Span {
    let mut s = Span::new(d.prime);
    for a in 0..d.dv {
        s.add(&d.quadratic(&unit(d.dv, a)));
        for b in a + 1..d.dv {
            s.add(&d.quadratic(&sum(d.prime, &unit(d.dv, a), &unit(d.dv, b))));
        }
    }
    s
}

fn groups() -> Vec<BeData> {
    [("ES_p_p5", 3), ("ES_p2_p5", 5), ("Phi2_211b", 7), ("MainThm_vi", 3), ("MainThm_vi", 5), ("ES_p_p3", 11)]
        .iter()
        .map(|&(id, p)| build_be_data(&Catalog::builtin().load(id, p).unwrap().pres).unwrap())
        .collect()
}

fn random_vec(d: &BeData, rng: &mut ChaCha8Rng) -> Vec<u32> {
    (0..d.dv).map(|_| rng.gen_range(0..d.prime as u32)).collect()
}

#[test]
fn jacobi_elements_of_random_triples_lie_in_x1() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for d in groups() {
        let mut s = x1(&d);
        assert_eq!(s.dim(), d.x1_rank);
        for _ in 0..SAMPLES {
            let (a, b, c) = (random_vec(&d, &mut rng), random_vec(&d, &mut rng), random_vec(&d, &mut rng));
            assert!(!s.add(&d.jacobi(&a, &b, &c)), "X1 grew");
        }
    }
}

#[test]
fn quadratic_elements_of_random_vectors_lie_in_x2() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for d in groups() {
        let mut s = x2(&d);
        assert_eq!(s.dim(), d.x2_rank);
        for _ in 0..SAMPLES {
            let v = random_vec(&d, &mut rng);
            assert!(!s.add(&d.quadratic(&v)), "X2 grew");
        }
    }
}

#[test]
fn x_is_the_sum() {
    for d in groups() {
        let mut s = x1(&d);
        for v in x2(&d).basis() {
            s.add(&v);
        }
        let x = d.x_span();
        assert_eq!(s.dim(), x.dim());
        assert!(s.basis().iter().all(|v| x.contains(v)));
    }
}
