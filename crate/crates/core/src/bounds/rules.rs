use super::{FactId, FactKind, Ledger, LedgerError, NewFact, Provenance};
use crate::abgroup::{exterior_square, tensor};
use crate::catalog::{compute_multiplier, Catalog, Group, MethodChoice};
use crate::pcgroup::{
    abelianization, central_quotient, derived_subgroup, iso_witness_check, structure_report, NormalWord, PcPresentation,
    StructureReport, Subgroup,
};

/// The group a script talks about, with its refined presentation.
#[derive(Clone, Debug)]
pub struct Subject {
    pub name: String,
    pub group: Group,
    pub rp: PcPresentation,
}

impl Subject {
    pub fn new(group: Group) -> Self {
        let rp = group.pres.refined().pres;
        Subject {
            name: group.id.clone(),
            group,
            rp,
        }
    }

    fn p(&self) -> u64 {
        self.group.p
    }

    fn report(&self) -> Result<StructureReport, LedgerError> {
        structure_report(&self.rp).map_err(|e| LedgerError::Compute(e.to_string()))
    }

    fn quotient_name(&self, which: &str) -> String {
        format!("{}/{}", self.name, which)
    }
}

fn precondition(msg: impl Into<String>) -> LedgerError {
    LedgerError::Precondition(msg.into())
}

/// `center`, `derived`, `gamma_c` or `<g1,g2,...>` (normal closure of
/// generators of the refined presentation).
pub fn resolve_subgroup(which: &str, s: &Subject) -> Result<Subgroup, LedgerError> {
    match which {
        "center" => Ok(s.report()?.center),
        "derived" => Ok(derived_subgroup(&s.rp)),
        "gamma_c" => Ok(s.report()?.last_lower().clone()),
        other => {
            let inner = other
                .strip_prefix('<')
                .and_then(|x| x.strip_suffix('>'))
                .ok_or_else(|| precondition(format!("unknown subgroup `{other}`")))?;
            let gens = inner
                .split(',')
                .map(str::trim)
                .filter(|x| !x.is_empty())
                .map(|name| {
                    s.rp
                        .generator_index(name)
                        .map(|i| s.rp.generator(i))
                        .ok_or_else(|| precondition(format!("unknown generator `{name}`")))
                })
                .collect::<Result<Vec<NormalWord>, _>>()?;
            Ok(Subgroup::generated(&s.rp, &gens, true))
        }
    }
}

fn central(which: &str, s: &Subject) -> Result<Subgroup, LedgerError> {
    let k = resolve_subgroup(which, s)?;
    if !k.is_central(&s.rp) {
        return Err(precondition(format!("{which} is not central in {}", s.name)));
    }
    Ok(k)
}

pub fn record_group_order(ledger: &mut Ledger, s: &Subject) -> Result<FactId, LedgerError> {
    if let Some(f) = ledger.group_order(&s.name) {
        return Ok(f.id);
    }
    ledger.add(NewFact::new(
        s.name.clone(),
        FactKind::GroupOrder,
        s.group.order_exponent(),
        Provenance::Computed("consistency check".into()),
    ))
}

fn computed_fact(ledger: &mut Ledger, name: String, g: &Group, choice: MethodChoice) -> Result<FactId, LedgerError> {
    let r = compute_multiplier(g, choice).map_err(|e| LedgerError::Compute(e.to_string()))?;
    ledger.add(
        NewFact::new(name, FactKind::Structure, r.log_order(), Provenance::Computed(r.method.tag().into()))
            .structure(r.invariants),
    )
}

/// Exact `M(G)` by computation.
pub fn apply_compute(ledger: &mut Ledger, s: &Subject, choice: MethodChoice) -> Result<FactId, LedgerError> {
    computed_fact(ledger, s.name.clone(), &s.group, choice)
}

/// Exact `M(G/K)` by computation, recorded under the subject `G/K`.
pub fn apply_compute_quotient(
    ledger: &mut Ledger,
    s: &Subject,
    which: &str,
    choice: MethodChoice,
) -> Result<FactId, LedgerError> {
    let k = central(which, s)?;
    let q = central_quotient(&s.rp, &k).map_err(|e| LedgerError::Compute(e.to_string()))?;
    let name = s.quotient_name(which);
    let g = Group::from_presentation(name.clone(), q);
    computed_fact(ledger, name, &g, choice)
}

/// `|M(G)| <= p^{n(n-1)/2}`.
pub fn rule_green(ledger: &mut Ledger, s: &Subject) -> Result<FactId, LedgerError> {
    let order = record_group_order(ledger, s)?;
    let n = ledger.fact(order).exponent;
    ledger.add(
        NewFact::new(
            s.name.clone(),
            FactKind::Upper,
            n * n.saturating_sub(1) / 2,
            Provenance::Rule {
                name: "green".into(),
                premises: vec![order],
            },
        )
        .note(format!("n = {n}")),
    )
}

fn quotient_premise(ledger: &Ledger, s: &Subject, which: &str, upper: bool) -> Result<(FactId, u32), LedgerError> {
    let name = s.quotient_name(which);
    let f = if upper {
        ledger.min_upper(&name)
    } else {
        ledger.max_lower(&name)
    };
    f.map(|f| (f.id, f.exponent)).ok_or_else(|| {
        LedgerError::MissingPremise(format!(
            "{} bound on |M({name})| (run `apply compute_quotient {which}` or assume it)",
            if upper { "an upper" } else { "a lower" }
        ))
    })
}

/// For central `K`: `|M(G)| |G' ∩ K|` divides `|M(G/K)| |M(K)| |(G/K)^ab ⊗ K|`.
pub fn rule_jones(ledger: &mut Ledger, s: &Subject, which: &str) -> Result<FactId, LedgerError> {
    let p = s.p();
    let k = central(which, s)?;
    let order = record_group_order(ledger, s)?;
    let (premise, mq) = quotient_premise(ledger, s, which, true)?;
    let q = central_quotient(&s.rp, &k).map_err(|e| LedgerError::Compute(e.to_string()))?;
    let k_ab = abelianization(&k.presentation(&s.rp));
    let mk = exterior_square(&k_ab).log_order(p);
    let t = tensor(&abelianization(&q), &k_ab).log_order(p);
    let gk = derived_subgroup(&s.rp).intersection(&s.rp, &k).order_exponent();
    let bound = (mq + mk + t).checked_sub(gk).ok_or_else(|| precondition("negative bound"))?;
    ledger.add(
        NewFact::new(
            s.name.clone(),
            FactKind::Upper,
            bound,
            Provenance::Rule {
                name: format!("jones K={which}"),
                premises: vec![order, premise],
            },
        )
        .note(format!(
            "|M(G/K)| <= {p}^{mq}, |M(K)| = {p}^{mk}, |(G/K)^ab ⊗ K| = {p}^{t}, |G' ∩ K| = {p}^{gk}"
        )),
    )
}

/// For class `c >= 2`: `|γ_c| |M(G)| <= |M(G/γ_c)| |(G/Z_{c-1})^ab ⊗ γ_c|`.
pub fn rule_class_bound(ledger: &mut Ledger, s: &Subject) -> Result<FactId, LedgerError> {
    let p = s.p();
    let r = s.report()?;
    let c = r.class;
    if c < 2 {
        return Err(precondition(format!("{} has class {c}; the class bound needs c >= 2", s.name)));
    }
    let order = record_group_order(ledger, s)?;
    let (premise, mq) = quotient_premise(ledger, s, "gamma_c", true)?;
    let gamma = r.last_lower();
    let gamma_ab = abelianization(&gamma.presentation(&s.rp));
    let (zq, _) = r.upper_central[c - 1].quotient(&s.rp);
    let t = tensor(&abelianization(&zq), &gamma_ab).log_order(p);
    let g = gamma.order_exponent();
    let bound = (mq + t).checked_sub(g).ok_or_else(|| precondition("negative bound"))?;
    ledger.add(
        NewFact::new(
            s.name.clone(),
            FactKind::Upper,
            bound,
            Provenance::Rule {
                name: "class_bound".into(),
                premises: vec![order, premise],
            },
        )
        .note(format!(
            "c = {c}, |M(G/γ_c)| <= {p}^{mq}, |(G/Z_(c-1))^ab ⊗ γ_c| = {p}^{t}, |γ_c| = {p}^{g}"
        )),
    )
}

/// Multipliers of extraspecial groups of order `p^{2n+1}`: order
/// `p^{2n^2-n-1}` for `n >= 2`; `Z_2`, `1`, `Z_p^2`, `1` for `D8`, `Q8`,
/// `ES_p(p^3)`, `ES_{p^2}(p^3)`.
pub fn rule_extraspecial(ledger: &mut Ledger, s: &Subject) -> Result<FactId, LedgerError> {
    let p = s.p();
    let r = s.report()?;
    let n_total = r.order_exponent;
    let (zq, _) = r.center.quotient(&s.rp);
    let extraspecial = r.derived.order_exponent() == 1
        && r.center.order_exponent() == 1
        && r.derived.is_subgroup_of(&s.rp, &r.center)
        && abelianization(&zq).is_elementary()
        && n_total >= 3
        && n_total % 2 == 1;
    if !extraspecial {
        return Err(precondition(format!(
            "{} is not extraspecial (|G'| = {p}^{}, |Z(G)| = {p}^{})",
            s.name,
            r.derived.order_exponent(),
            r.center.order_exponent()
        )));
    }
    let order = record_group_order(ledger, s)?;
    let n = (n_total - 1) / 2;
    let provenance = Provenance::Rule {
        name: "extraspecial".into(),
        premises: vec![order],
    };
    if n >= 2 {
        let e = 2 * n * n - n - 1;
        return ledger.add(NewFact::new(s.name.clone(), FactKind::Exact, e, provenance).note(format!("order {p}^{n_total}")));
    }
    let (structure, label) = if p == 2 {
        let involutions = s
            .rp
            .elements()
            .filter(|x| !x.is_identity() && s.rp.element_order(x) == 2)
            .count();
        if involutions > 1 {
            (crate::abgroup::AbelianGroup::cyclic(2, 1), "D8")
        } else {
            (crate::abgroup::AbelianGroup::trivial(), "Q8")
        }
    } else if r.exponent_log == 1 {
        (crate::abgroup::AbelianGroup::elementary(p, 2), "exponent p")
    } else {
        (crate::abgroup::AbelianGroup::trivial(), "exponent p^2")
    };
    ledger.add(
        NewFact::new(s.name.clone(), FactKind::Structure, structure.log_order(p), provenance)
            .structure(structure)
            .note(format!("order {p}^3, {label}")),
    )
}

/// For central `Z` in a capable `G`: `|M(G)| > |M(G/Z)| / |G' ∩ Z|`, promoted
/// to `|M(G)| >= p |M(G/Z)| / |G' ∩ Z|`.
pub fn rule_transgression_lower(ledger: &mut Ledger, s: &Subject, which: &str) -> Result<FactId, LedgerError> {
    let p = s.p();
    let cap = ledger.capable(&s.name).map(|f| f.id).ok_or_else(|| {
        LedgerError::MissingPremise(format!(
            "capability of {} (the rule does not assume the transgression image is nontrivial)",
            s.name
        ))
    })?;
    let z = central(which, s)?;
    let order = record_group_order(ledger, s)?;
    let (premise, mq) = quotient_premise(ledger, s, which, false)?;
    let gz = derived_subgroup(&s.rp).intersection(&s.rp, &z).order_exponent();
    let bound = (mq + 1).checked_sub(gz).ok_or_else(|| precondition("negative bound"))?;
    ledger.add(
        NewFact::new(
            s.name.clone(),
            FactKind::Lower,
            bound,
            Provenance::Rule {
                name: format!("transgression_lower Z={which}"),
                premises: vec![order, cap, premise],
            },
        )
        .note(format!(
            "|M(G/Z)| >= {p}^{mq}, |G' ∩ Z| = {p}^{gz}, strict inequality promoted"
        )),
    )
}

/// Capability of `G` from a catalog group `E` with `E/Z(E) ≅ G`, checked by
/// mapping each generator of `G` to the generator of `E/Z(E)` with the same
/// name.
pub fn apply_capable_witness(ledger: &mut Ledger, s: &Subject, witness: &str) -> Result<FactId, LedgerError> {
    let e = Catalog::builtin()
        .load(witness, s.p())
        .map_err(|e| LedgerError::Compute(e.to_string()))?;
    let report = structure_report(&e.pres).map_err(|e| LedgerError::Compute(e.to_string()))?;
    let q = central_quotient(report.pres(), &report.center).map_err(|e| LedgerError::Compute(e.to_string()))?;
    let images = s
        .group
        .pres
        .names()
        .iter()
        .map(|name| {
            q.generator_index(name)
                .map(|i| q.generator(i))
                .ok_or_else(|| precondition(format!("{witness}/Z has no generator `{name}`")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let ok = iso_witness_check(&s.group.pres, &q, &images).map_err(|e| precondition(e.to_string()))?;
    if !ok {
        return Err(precondition(format!("{witness}/Z({witness}) is not isomorphic to {} under the name map", s.name)));
    }
    ledger.add(
        NewFact::new(
            s.name.clone(),
            FactKind::Capable,
            0,
            Provenance::Computed(format!("witness {witness}: E/Z(E) = G, |E| = {}^{}", s.p(), e.order_exponent())),
        ),
    )
}
