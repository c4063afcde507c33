use super::presentation::{NormalWord, PcBuilder, PcPresentation, RawWord, Tail};
use super::subgroup::Subgroup;
use super::PcError;

fn refined_subgroup(pres: &PcPresentation, k: &Subgroup) -> (PcPresentation, Subgroup) {
    if pres.is_refined() {
        return (pres.clone(), k.clone());
    }
    let r = pres.refined();
    let gens: Vec<NormalWord> = k.gens().iter().map(|g| r.to_refined(g)).collect();
    let k = Subgroup::generated(&r.pres, &gens, false);
    (r.pres, k)
}

/// `G/K` for a central subgroup `K` of `pres`. A presentation with
/// non-prime relative orders is refined first, and `K`'s generators are
/// read as words of the original presentation.
pub fn central_quotient(pres: &PcPresentation, k: &Subgroup) -> Result<PcPresentation, PcError> {
    let (rp, k) = refined_subgroup(pres, k);
    if !k.is_central(&rp) {
        return Err(PcError::NotCentral);
    }
    let (q, _) = k.quotient(&rp);
    let label = pres.label().map(|l| format!("{l}/K"));
    Ok(match label {
        Some(l) => q.with_label(l),
        None => q,
    })
}

/// `A × B` with `B`'s generators after `A`'s. Names of `B` that clash with
/// names of `A` get a `_2` suffix.
pub fn direct_product(a: &PcPresentation, b: &PcPresentation) -> Result<PcPresentation, PcError> {
    if a.prime() != b.prime() {
        return Err(PcError::PrimeMismatch(a.prime(), b.prime()));
    }
    let na = a.num_gens();
    let mut builder = PcBuilder::new(a.prime());
    let mut names: Vec<String> = a.names().to_vec();
    for (i, name) in a.names().iter().enumerate() {
        builder = builder.gen(name.clone(), a.relative_exponents()[i]);
    }
    for (i, name) in b.names().iter().enumerate() {
        let mut n = name.clone();
        while names.contains(&n) {
            n.push_str("_2");
        }
        names.push(n.clone());
        builder = builder.gen(n, b.relative_exponents()[i]);
    }
    let shift = |t: &Tail, by: usize| -> RawWord { t.iter().map(|&(g, e)| (g + by, e as i64)).collect() };
    for (pres, off) in [(a, 0), (b, na)] {
        for j in 0..pres.num_gens() {
            if !pres.power_tail(j).is_empty() {
                builder = builder.pow_raw(j + off, shift(pres.power_tail(j), off));
            }
            for i in 0..j {
                if !pres.comm_tail(j, i).is_empty() {
                    builder = builder.comm_raw(j + off, i + off, shift(pres.comm_tail(j, i), off));
                }
            }
        }
    }
    let out = builder.build()?;
    Ok(match (a.label(), b.label()) {
        (Some(x), Some(y)) => out.with_label(format!("{x} x {y}")),
        _ => out,
    })
}

fn eval_on_images(dst: &PcPresentation, images: &[NormalWord], t: &Tail) -> NormalWord {
    let mut acc = dst.identity();
    for &(g, e) in t {
        acc = dst.mul(&acc, &dst.pow(&images[g], e as u64));
    }
    acc
}

/// True iff `g_i ↦ images[i]` satisfies every relation of `src` inside `dst`
/// and the images generate all of `dst`. With equal orders this certifies an
/// isomorphism.
pub fn iso_witness_check(
    src: &PcPresentation,
    dst: &PcPresentation,
    images: &[NormalWord],
) -> Result<bool, PcError> {
    if images.len() != src.num_gens() {
        return Err(PcError::ImageCount {
            expected: src.num_gens(),
            got: images.len(),
        });
    }
    if src.prime() != dst.prime() || src.order_exponent() != dst.order_exponent() {
        return Err(PcError::OrderMismatch {
            src: format!("{}^{}", src.prime(), src.order_exponent()),
            dst: format!("{}^{}", dst.prime(), dst.order_exponent()),
        });
    }
    for w in images {
        if w.len() != dst.num_gens() {
            return Err(PcError::WordLength {
                expected: dst.num_gens(),
                got: w.len(),
            });
        }
    }
    for i in 0..src.num_gens() {
        let lhs = dst.pow(&images[i], src.relative_orders()[i] as u64);
        if lhs != eval_on_images(dst, images, src.power_tail(i)) {
            return Ok(false);
        }
        for j in i + 1..src.num_gens() {
            let lhs = dst.commutator(&images[j], &images[i]);
            if lhs != eval_on_images(dst, images, src.comm_tail(j, i)) {
                return Ok(false);
            }
        }
    }
    let r = dst.refined();
    let gens: Vec<NormalWord> = images.iter().map(|w| r.to_refined(w)).collect();
    let h = Subgroup::generated(&r.pres, &gens, false);
    Ok(h.order_exponent() == dst.order_exponent())
}
