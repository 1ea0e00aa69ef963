//! Corpus checks: each routine runs one family of exact equalities and
//! records both sides per instance. `selftest` runs them all on the fixed
//! seed-0 corpus.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::base::BaseRing;
use crate::corpus::{corpus_scenarios, random_squarefree, MAX_ENTRY_HEIGHT, TEMPLATES};
use crate::division::DivisionKind;
use crate::etale::{EtaleAlgebra, EtaleElement};
use crate::hermitian::HermForm;
use crate::involution::{AlgElement, InvolutiveAlgebra, Standard};
use crate::morita::{check_square, MoritaContext};
use crate::numeric::{Ring, UniPoly};
use crate::quadratic::{trace_form, QuadForm};
use crate::relative::RelativeEtale;
use crate::report::Report;
use crate::scenario::{parse_num, to_toml};
use crate::signature::{
    find_reference_form, find_two_power_form, symmetric_unit_candidates, total_signature, two_power_multiple_match,
    MatchOutcome, ReferenceForm, SearchBudget,
};
use crate::transfer::verify_ktf_commutative;
use crate::Result;

type Alg = Arc<InvolutiveAlgebra<EtaleAlgebra>>;

pub fn base_from(factors: &[&[i64]]) -> Arc<EtaleAlgebra> {
    Arc::new(EtaleAlgebra::new(factors.iter().map(|f| UniPoly::from_ints(f)).collect()).expect("valid factors"))
}

pub fn sqrt2_base() -> Arc<EtaleAlgebra> {
    base_from(&[&[-2, 0, 1]])
}

/// `M_n(D)` with the standard involution for `D` and an optional twist
/// given by its diagonal of central elements.
pub fn make_algebra(
    base: &Arc<EtaleAlgebra>,
    n: usize,
    kind: DivisionKind,
    params: &[i64],
    diag: Option<&[EtaleElement]>,
) -> Alg {
    let p: Vec<EtaleElement> = params.iter().map(|&v| base.from_int(v)).collect();
    let std = if kind == DivisionKind::Base {
        Standard::Transpose
    } else {
        Standard::ConjTranspose
    };
    let twist = diag.map(|d| {
        let prov = InvolutiveAlgebra::new(base.clone(), n, kind, p.clone(), std, None).expect("valid algebra");
        let dv = prov.division();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| dv.scalar(if i == j { d[i].clone() } else { base.zero() }))
                    .collect()
            })
            .collect()
    });
    Arc::new(InvolutiveAlgebra::new(base.clone(), n, kind, p, std, twist).expect("valid algebra"))
}

/// `M_n(D)` twisted by an arbitrary invertible `u` built from the
/// provisional untwisted algebra.
pub fn make_twisted(
    base: &Arc<EtaleAlgebra>,
    n: usize,
    kind: DivisionKind,
    params: &[i64],
    twist: impl Fn(&InvolutiveAlgebra<EtaleAlgebra>) -> AlgElement<EtaleElement>,
) -> Alg {
    let p: Vec<EtaleElement> = params.iter().map(|&v| base.from_int(v)).collect();
    let std = if kind == DivisionKind::Base {
        Standard::Transpose
    } else {
        Standard::ConjTranspose
    };
    let prov = InvolutiveAlgebra::new(base.clone(), n, kind, p.clone(), std, None).expect("valid algebra");
    let u = twist(&prov);
    Arc::new(InvolutiveAlgebra::new(base.clone(), n, kind, p, std, Some(u)).expect("valid twist"))
}

pub fn symplectic_m2(base: &Arc<EtaleAlgebra>) -> Alg {
    make_twisted(base, 2, DivisionKind::Base, &[], |a| {
        let one = a.division().scalar(base.one());
        let zero = a.division().scalar(base.zero());
        let neg = a.division().scalar(base.from_int(-1));
        vec![vec![zero.clone(), one], vec![neg, zero]]
    })
}

/// A diagonal form of the given rank with entries drawn from the search
/// candidates.
fn random_diagonal(
    rng: &mut ChaCha8Rng,
    alg: &Alg,
    cands: &[AlgElement<EtaleElement>],
    rank: usize,
) -> Result<HermForm<EtaleAlgebra>> {
    let entries = (0..rank)
        .map(|_| cands[rng.gen_range(0..cands.len())].clone())
        .collect();
    HermForm::diagonal(alg.clone(), entries)
}

fn random_unit(rng: &mut ChaCha8Rng, base: &EtaleAlgebra, height: i64) -> EtaleElement {
    loop {
        let deg = base
            .factors()
            .iter()
            .map(|f| f.degree().unwrap_or(1))
            .max()
            .unwrap_or(1);
        let c: Vec<_> = (0..deg)
            .map(|_| crate::numeric::rat(rng.gen_range(-height..=height)))
            .collect();
        let a = base.from_poly(&c);
        if base.is_unit(&a) {
            return a;
        }
    }
}

fn error_row(r: &mut Report, check: &str, instance: &str, e: impl std::fmt::Display) {
    r.push_check(
        check,
        instance,
        instance,
        json!(format!("error: {e}")),
        Value::Null,
        json!({}),
    );
}

/// The hermitian trace formula on the generated corpus, at every ordering
/// of the base.
pub fn ktf_corpus(seed: u64, size: usize, budget: &SearchBudget) -> Report {
    let mut report = Report::checks("hermitian trace formula");
    for (i, s) in corpus_scenarios(seed, size).into_iter().enumerate() {
        let template = TEMPLATES[i % TEMPLATES.len()];
        let ctx = &s.transfers["A"];
        let instance = format!(
            "#{i} {template} T=Q[y]/({})",
            UniPoly::new(
                s.doc
                    .extension
                    .as_ref()
                    .unwrap()
                    .poly
                    .iter()
                    .map(|v| parse_num(v).expect("loaded"))
                    .collect(),
            )
        );
        let run = || -> Result<Vec<crate::transfer::KtfReport>> {
            let eta = find_reference_form(ctx.algebra(), budget)?;
            let eta_t = ctx.extend_reference(&eta)?;
            (0..s.base.num_orderings())
                .map(|a| ctx.verify_hermitian(&s.extension_forms["h"], a, &eta, &eta_t))
                .collect()
        };
        match run() {
            Ok(reps) => {
                for rep in reps {
                    report.push_check(
                        "hermitian-trace-formula",
                        &instance,
                        &to_toml(&s.doc),
                        json!(rep.lhs),
                        json!(rep.rhs),
                        json!({"alpha": rep.alpha, "r": rep.r, "t": rep.t, "per_gamma": rep.per_gamma}),
                    );
                }
            }
            Err(e) => error_row(&mut report, "hermitian-trace-formula", &instance, e),
        }
    }
    report
}

/// The trace formula for diagonal quadratic forms over random `T`.
pub fn ktf_commutative_corpus(seed: u64, size: usize) -> Report {
    let mut report = Report::checks("quadratic trace formula");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = Arc::new(EtaleAlgebra::rationals());
    for i in 0..size {
        let f = random_squarefree(&mut rng, 4, 9);
        let e =
            Arc::new(RelativeEtale::new(q.clone(), f.iter().map(|&c| q.from_int(c)).collect()).expect("squarefree"));
        let dim = rng.gen_range(1..=4);
        let entries: Vec<_> = (0..dim)
            .map(|_| loop {
                let c: Vec<_> = (0..e.degree())
                    .map(|_| q.from_int(rng.gen_range(-MAX_ENTRY_HEIGHT..=MAX_ENTRY_HEIGHT)))
                    .collect();
                let a = e.reduce(c);
                if e.is_unit(&a) {
                    break a;
                }
            })
            .collect();
        let form = QuadForm::diagonal(e.clone(), entries);
        let rep = verify_ktf_commutative(&e, &form, 0);
        let instance = format!("#{i} T=Q[y]/({}) dim {dim}", UniPoly::from_ints(&f));
        report.push_check(
            "quadratic-trace-formula",
            &instance,
            &format!("{f:?} {:?}", form.gram()),
            json!(rep.lhs),
            json!(rep.rhs),
            json!({"r": rep.r, "t": rep.t, "per_gamma": rep.per_gamma}),
        );
    }
    report
}

/// The polynomials behind the extension-counting check: four fixed ones
/// and `extra` random ones.
pub fn counting_polys(seed: u64, extra: usize) -> Vec<Vec<i64>> {
    let mut polys = vec![vec![-2, 0, 1], vec![1, 0, 1], vec![0, -1, 0, 1], vec![-2, 0, -1, 0, 1]];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    polys.extend((0..extra).map(|_| random_squarefree(&mut rng, 4, 9)));
    polys
}

/// `sign Tr*⟨1⟩` against the number of real extensions of the ordering of
/// ℚ, i.e. the number of real roots.
pub fn extension_counting(seed: u64, extra: usize) -> Report {
    let mut report = Report::checks("extension counting");
    let q = Arc::new(EtaleAlgebra::rationals());
    for f in counting_polys(seed, extra) {
        let t = EtaleAlgebra::new(vec![UniPoly::from_ints(&f)]).expect("squarefree");
        let e = RelativeEtale::new(q.clone(), f.iter().map(|&c| q.from_int(c)).collect()).expect("squarefree");
        let r = e.extensions_of_ordering(0).len();
        report.push_check(
            "trace-form-counts-extensions",
            &UniPoly::from_ints(&f).to_string(),
            &format!("{f:?}"),
            json!(trace_form(&t).signature_at(0)),
            json!(r),
            json!({"t": e.degree()}),
        );
    }
    report
}

/// `sign ⟪b₁,…,b_k⟫ = 2^k` when every `b_i` is positive at the ordering,
/// else 0; all tuples of length ≤ 3 from a pool of units.
pub fn pfister_signatures() -> Report {
    let mut report = Report::checks("Pfister signatures");
    // orderings: -√2, √2, 3
    let base = base_from(&[&[-2, 0, 1], &[-3, 1]]);
    let x = base.x();
    let pool: Vec<EtaleElement> = vec![
        base.from_int(-1),
        base.from_int(2),
        x.clone(),
        base.sub(&x, &base.one()),
        base.sub(&base.one(), &x),
    ];
    let mut tuples: Vec<Vec<usize>> = vec![vec![]];
    for k in 1..=3 {
        let mut next = Vec::new();
        for t in tuples.iter().filter(|t| t.len() == k - 1) {
            for i in 0..pool.len() {
                let mut u = t.clone();
                u.push(i);
                next.push(u);
            }
        }
        tuples.extend(next);
    }
    for t in tuples {
        let b: Vec<EtaleElement> = t.iter().map(|&i| pool[i].clone()).collect();
        let p = QuadForm::pfister(base.clone(), &b).expect("pool elements are units");
        let expected: Vec<i64> = (0..base.num_orderings())
            .map(|a| {
                if b.iter().all(|bi| base.sign_at(a, bi).to_i64() > 0) {
                    1 << b.len()
                } else {
                    0
                }
            })
            .collect();
        let name = format!(
            "<<{}>>",
            b.iter().map(|e| base.display(e)).collect::<Vec<_>>().join(", ")
        );
        report.push_check(
            "pfister",
            &name,
            &name,
            json!(p.signatures()),
            json!(expected),
            json!({"k": b.len()}),
        );
    }
    report
}

/// Morita contexts over ℚ(√2) between algebras sharing `D`.
pub fn morita_contexts() -> Vec<(String, MoritaContext<EtaleAlgebra>)> {
    let base = sqrt2_base();
    let x = base.x();
    let one = base.one();
    let m1 = make_algebra(&base, 1, DivisionKind::Base, &[], None);
    let m2 = make_algebra(&base, 2, DivisionKind::Base, &[], None);
    let m2x = make_algebra(&base, 2, DivisionKind::Base, &[], Some(&[one.clone(), x.clone()]));
    let sp = symplectic_m2(&base);
    let h1 = make_algebra(&base, 1, DivisionKind::Quaternion, &[-1, -1], None);
    let h2 = make_algebra(&base, 2, DivisionKind::Quaternion, &[-1, -1], None);
    let h2x = make_algebra(
        &base,
        2,
        DivisionKind::Quaternion,
        &[-1, -1],
        Some(&[one.clone(), x.clone()]),
    );
    let hi = make_twisted(&base, 1, DivisionKind::Quaternion, &[-1, -1], |a| {
        vec![vec![a.division().basis(1)]]
    });
    let c1 = make_algebra(&base, 1, DivisionKind::Quadratic, &[-1], None);
    let c2 = make_algebra(&base, 2, DivisionKind::Quadratic, &[-1], Some(&[one, x]));
    let cw = make_twisted(&base, 1, DivisionKind::Quadratic, &[-1], |a| {
        vec![vec![a.division().basis(1)]]
    });
    let pairs = [
        ("M1 -> M2", &m1, &m2),
        ("M2 -> M1", &m2, &m1),
        ("M2 -> M2 diag(1,x)", &m2, &m2x),
        ("M2 -> M2 symplectic", &m2, &sp),
        ("H -> M2(H)", &h1, &h2),
        ("H -> M2(H) diag(1,x)", &h1, &h2x),
        ("H -> (H, i-twist)", &h1, &hi),
        ("Q(i) -> M2(Q(i)) diag(1,x)", &c1, &c2),
        ("Q(i) -> (Q(i), w-twist)", &c1, &cw),
    ];
    pairs
        .into_iter()
        .map(|(name, s, t)| {
            (
                name.to_string(),
                MoritaContext::new(s.clone(), t.clone()).expect("same D"),
            )
        })
        .collect()
}

/// `sign^η_α h = sign^{F(η)}_α F(h)` on `triples` (context, h, α) and the
/// signature-level commuting square on `squares` (context, h) pairs.
pub fn morita_invariance(seed: u64, triples: usize, squares: usize, budget: &SearchBudget) -> Report {
    let mut report = Report::checks("Morita invariance");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let contexts = morita_contexts();
    let base = contexts[0].1.source().base().clone();
    let e = Arc::new(
        RelativeEtale::new(base.clone(), vec![base.neg(&base.x()), base.zero(), base.one()])
            .expect("y² - x is squarefree"),
    );
    let mut done = 0;
    let mut squares_done = 0;
    'outer: for round in 0.. {
        for (name, ctx) in &contexts {
            if done >= triples && squares_done >= squares {
                break 'outer;
            }
            let alg = ctx.source();
            let cands = symmetric_unit_candidates(alg, budget);
            let run = |rng: &mut ChaCha8Rng| -> Result<(HermForm<EtaleAlgebra>, ReferenceForm<EtaleAlgebra>, Vec<(i64, i64)>)> {
                let h = random_diagonal(rng, alg, &cands, 2)?;
                let eta = find_reference_form(alg, budget)?;
                let pairs = ctx.signature_pairs(&h, &eta)?;
                Ok((h, eta, pairs))
            };
            let instance = format!("{name} round {round}");
            match run(&mut rng) {
                Ok((h, eta, pairs)) => {
                    for (a, (l, r)) in pairs.into_iter().enumerate() {
                        if done < triples {
                            report.push_check(
                                "morita-signature",
                                &format!("{instance} alpha {a}"),
                                &format!("{name} {:?}", h.gram()),
                                json!(l),
                                json!(r),
                                json!({"alpha": a, "delta": ctx.delta()}),
                            );
                            done += 1;
                        }
                    }
                    if squares_done < squares {
                        match check_square(ctx, &e, &h, &eta) {
                            Ok(sq) => report.push_check(
                                "morita-extension-square",
                                &instance,
                                &format!("{name} {:?}", h.gram()),
                                json!(sq.morita_then_extend),
                                json!(sq.extend_then_morita),
                                json!({}),
                            ),
                            Err(err) => error_row(&mut report, "morita-extension-square", &instance, err),
                        }
                        squares_done += 1;
                    }
                }
                Err(err) => {
                    error_row(&mut report, "morita-signature", &instance, err);
                    done += 1;
                }
            }
        }
    }
    report
}

/// Algebras over ℚ(√2) used for the ring-morphism checks.
pub fn sqrt2_algebras() -> Vec<(String, Alg)> {
    let base = sqrt2_base();
    let x = base.x();
    vec![
        ("M1 id".into(), make_algebra(&base, 1, DivisionKind::Base, &[], None)),
        (
            "M2 transpose".into(),
            make_algebra(&base, 2, DivisionKind::Base, &[], None),
        ),
        (
            "M2 diag(1,x)".into(),
            make_algebra(&base, 2, DivisionKind::Base, &[], Some(&[base.one(), x])),
        ),
        (
            "(-1,-1) conj".into(),
            make_algebra(&base, 1, DivisionKind::Quaternion, &[-1, -1], None),
        ),
        (
            "Q(i) unitary".into(),
            make_algebra(&base, 1, DivisionKind::Quadratic, &[-1], None),
        ),
    ]
}

/// Additivity over `⊥`, `sign(q ⊗ h) = sign q · sign h`, and zero total
/// signature of hyperbolic forms (both `ε`).
pub fn ring_morphism(seed: u64, cases: usize, budget: &SearchBudget) -> Report {
    let mut report = Report::checks("signature ring morphism");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let algs = sqrt2_algebras();
    let prepared: Vec<_> = algs
        .iter()
        .map(|(name, a)| {
            (
                name,
                a,
                symmetric_unit_candidates(a, budget),
                find_reference_form(a, budget),
            )
        })
        .collect();
    for i in 0..cases {
        let (name, alg, cands, eta) = &prepared[i % prepared.len()];
        let instance = format!("#{i} {name}");
        let eta = match eta {
            Ok(eta) => eta,
            Err(e) => {
                error_row(&mut report, "ring-morphism", &instance, e);
                continue;
            }
        };
        let run = |rng: &mut ChaCha8Rng| -> Result<(Value, Value, String)> {
            let r1 = rng.gen_range(1..=2);
            let r2 = rng.gen_range(1..=2);
            let h1 = random_diagonal(rng, alg, cands, r1)?;
            let h2 = random_diagonal(rng, alg, cands, r2)?;
            let base = alg.base();
            let qd = rng.gen_range(1..=2);
            let q = QuadForm::diagonal(base.clone(), (0..qd).map(|_| random_unit(rng, base, 3)).collect());
            let t1 = total_signature(&h1, eta);
            let t2 = total_signature(&h2, eta);
            let sum = total_signature(&h1.orth_sum(&h2)?, eta);
            let prod = total_signature(&HermForm::q_tensor_h(&q, &h1)?, eta);
            let hyp: Vec<Vec<i64>> = [1, -1]
                .iter()
                .map(|&eps| {
                    HermForm::hyperbolic(Arc::clone(alg), r1, eps).map(|h| {
                        (0..base.num_orderings())
                            .map(|a| crate::signature::m_signature(&h, a))
                            .collect()
                    })
                })
                .collect::<Result<_>>()?;
            let qs = q.signatures();
            let n = base.num_orderings();
            let lhs = json!({"sum": sum, "product": prod, "hyperbolic": hyp});
            let rhs = json!({
                "sum": (0..n).map(|a| t1[a] + t2[a]).collect::<Vec<_>>(),
                "product": (0..n).map(|a| qs[a] * t1[a]).collect::<Vec<_>>(),
                "hyperbolic": vec![vec![0i64; n]; 2],
            });
            Ok((lhs, rhs, format!("{:?} {:?} {:?}", h1.gram(), h2.gram(), q.gram())))
        };
        match run(&mut rng) {
            Ok((l, r, input)) => report.push_check("ring-morphism", &instance, &input, l, r, json!({})),
            Err(e) => error_row(&mut report, "ring-morphism", &instance, e),
        }
    }
    report
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Component {
    Nonsingular,
    Singular,
    Hyperbolic,
}

/// Products of two or three rank-two forms over M_1 of different bases:
/// nonsingular iff every component is, hyperbolic components give a
/// hyperbolic product, and the product's signatures are the components'
/// signatures side by side.
pub fn direct_products(cases: usize) -> Report {
    let mut report = Report::checks("direct products");
    let bases: [&[i64]; 4] = [&[0, 1], &[-2, 0, 1], &[-3, 0, 1], &[1, 0, 1]];
    let states = [Component::Nonsingular, Component::Singular, Component::Hyperbolic];
    for k in 0..cases {
        let count = if k < 16 { 2 } else { 3 };
        let picks: Vec<(usize, Component)> = (0..count)
            .map(|c| ((k + c * (1 + k / 4)) % 4, states[(k / 3usize.pow(c as u32)) % 3]))
            .collect();
        let comps: Vec<HermForm<EtaleAlgebra>> = picks
            .iter()
            .map(|&(b, st)| {
                let base = base_from(&[bases[b]]);
                let alg = make_algebra(&base, 1, DivisionKind::Base, &[], None);
                match st {
                    Component::Nonsingular => HermForm::diagonal_scalars(alg, &[base.one(), base.from_int(-3)]),
                    Component::Singular => HermForm::diagonal_scalars(alg, &[base.one(), base.zero()]),
                    Component::Hyperbolic => HermForm::hyperbolic(alg, 1, 1),
                }
                .expect("valid component")
            })
            .collect();
        let instance = format!("#{k} {picks:?}");
        match HermForm::direct_product(&comps) {
            Ok(p) => {
                let all_hyp = picks.iter().all(|p| p.1 == Component::Hyperbolic);
                let sig = |h: &HermForm<EtaleAlgebra>| -> Vec<i64> {
                    (0..h.algebra().base().num_orderings())
                        .map(|a| crate::signature::m_signature(h, a))
                        .collect()
                };
                let glued: Vec<i64> = comps.iter().flat_map(&sig).collect();
                let lhs = json!({
                    "nonsingular": p.is_nonsingular(),
                    "hyperbolic": all_hyp.then(|| p.has_lagrangian_witness()),
                    "signatures": sig(&p),
                });
                let rhs = json!({
                    "nonsingular": comps.iter().all(|c| c.is_nonsingular()),
                    "hyperbolic": all_hyp.then_some(true),
                    "signatures": glued,
                });
                report.push_check("direct-product", &instance, &instance, lhs, rhs, json!({}));
            }
            Err(e) => error_row(&mut report, "direct-product", &instance, e),
        }
    }
    report
}

/// The algebras of the two-power reference-form check.
pub fn two_power_algebras() -> Vec<(String, Alg)> {
    let q = Arc::new(EtaleAlgebra::rationals());
    let s2 = sqrt2_base();
    vec![
        ("M1(Q) id".into(), make_algebra(&q, 1, DivisionKind::Base, &[], None)),
        (
            "(-1,-1)_Q conj".into(),
            make_algebra(&q, 1, DivisionKind::Quaternion, &[-1, -1], None),
        ),
        (
            "M2(Q) transpose".into(),
            make_algebra(&q, 2, DivisionKind::Base, &[], None),
        ),
        (
            "M1(Q(sqrt2)) id".into(),
            make_algebra(&s2, 1, DivisionKind::Base, &[], None),
        ),
    ]
}

/// Nonsingular `h₀` with `|sign^η_α h₀| = 2^m` off Nil and 0 on Nil,
/// re-evaluated with `total_signature`.
pub fn two_power_forms(budget: &SearchBudget) -> Report {
    let mut report = Report::checks("two-power reference forms");
    for (name, alg) in two_power_algebras() {
        let run = || -> Result<(Value, Value, u32)> {
            let eta = find_reference_form(&alg, budget)?;
            let tp = find_two_power_form(&eta, budget)?;
            let total = total_signature(&tp.form, &eta);
            let nil = alg.nil_set();
            let lhs = json!({
                "nonsingular": tp.form.is_nonsingular(),
                "abs_total": total.iter().map(|v| v.abs()).collect::<Vec<_>>(),
            });
            let rhs = json!({
                "nonsingular": true,
                "abs_total": (0..total.len()).map(|a| if nil.contains(&a) { 0 } else { 1i64 << tp.m }).collect::<Vec<_>>(),
            });
            Ok((lhs, rhs, tp.m))
        };
        match run() {
            Ok((l, r, m)) => report.push_check("two-power-form", &name, &name, l, r, json!({"m": m})),
            Err(e) => error_row(&mut report, "two-power-form", &name, e),
        }
    }
    report
}

/// The fixed (algebra, f) targets of the 2-primary matching check.
pub fn match_targets() -> Vec<(String, Alg, Vec<i64>)> {
    let s2 = sqrt2_base();
    let four = base_from(&[&[-1, 1], &[1, 1], &[-2, 0, 1]]);
    let id = make_algebra(&s2, 1, DivisionKind::Base, &[], None);
    let quat = make_algebra(&s2, 1, DivisionKind::Quaternion, &[-1, -1], None);
    let m2 = make_algebra(&s2, 2, DivisionKind::Base, &[], None);
    let unitary = make_algebra(&s2, 1, DivisionKind::Quadratic, &[-1], None);
    let id4 = make_algebra(&four, 1, DivisionKind::Base, &[], None);
    vec![
        ("M1(Q(sqrt2))".into(), id.clone(), vec![1, 1]),
        ("M1(Q(sqrt2))".into(), id.clone(), vec![0, 1]),
        ("M1(Q(sqrt2))".into(), id.clone(), vec![2, -1]),
        ("M1(Q(sqrt2))".into(), id, vec![-3, 1]),
        ("(-1,-1) over Q(sqrt2)".into(), quat.clone(), vec![1, 0]),
        ("(-1,-1) over Q(sqrt2)".into(), quat, vec![1, -1]),
        ("M2(Q(sqrt2))".into(), m2, vec![0, 1]),
        ("M1(Q x Q x Q(sqrt2))".into(), id4.clone(), vec![1, 0, 0, 1]),
        ("M1(Q x Q x Q(sqrt2))".into(), id4, vec![0, 1, -1, 0]),
        ("Q(i) over Q(sqrt2)".into(), unitary, vec![1, 0]),
    ]
}

/// `two_power_multiple_match` on the fixed targets; a found form is
/// re-evaluated independently, a miss fails with the residual.
pub fn two_power_matches(budget: &SearchBudget) -> Report {
    let mut report = Report::checks("2-primary matching");
    for (name, alg, f) in match_targets() {
        let instance = format!("{name} f={f:?}");
        let run = || -> Result<(Value, Value, Value)> {
            let eta = find_reference_form(&alg, budget)?;
            Ok(match two_power_multiple_match(&f, &eta, budget)? {
                MatchOutcome::Found { m, form } => (
                    json!(total_signature(&form, &eta)),
                    json!(f.iter().map(|v| v << m).collect::<Vec<_>>()),
                    json!({"m": m, "rank": form.rank()}),
                ),
                MatchOutcome::NotFound { residual } => (
                    json!({"not_found": residual}),
                    json!(f.iter().map(|v| v << budget.max_m).collect::<Vec<_>>()),
                    json!({}),
                ),
            })
        };
        match run() {
            Ok((l, r, x)) => report.push_check("two-power-match", &instance, &instance, l, r, x),
            Err(e) => error_row(&mut report, "two-power-match", &instance, e),
        }
    }
    report
}

/// Random squarefree integer polynomials of degree ≤ `max_degree`, not
/// necessarily monic.
pub fn random_polys(seed: u64, count: usize, max_degree: usize) -> Vec<Vec<i64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let deg = rng.gen_range(1..=max_degree);
        let mut c: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-9..=9)).collect();
        if c[deg] == 0 {
            c[deg] = 1;
        }
        if UniPoly::from_ints(&c).squarefree_check().unwrap_or(false) {
            out.push(c);
        }
    }
    out
}

/// Real roots counted by sign changes of `f64` evaluations on a grid
/// over the Cauchy bound, doubling the grid until two counts agree.
pub fn bisection_root_count(c: &[i64]) -> usize {
    let lead = *c.last().unwrap() as f64;
    let bound = 1.0 + c.iter().map(|&v| (v as f64 / lead).abs()).fold(0.0, f64::max);
    let eval = |x: f64| c.iter().rev().fold(0.0, |acc, &v| acc * x + v as f64);
    let count = |n: usize| {
        // offset keeps grid points off rational roots
        let step = 2.0 * bound / n as f64;
        let mut prev = eval(-bound - 1e-9 * std::f64::consts::PI);
        let mut changes = 0;
        for i in 1..=n {
            let v = eval(-bound + i as f64 * step - 1e-9 * std::f64::consts::PI);
            if v != 0.0 && prev != 0.0 && (v < 0.0) != (prev < 0.0) {
                changes += 1;
            }
            if v != 0.0 {
                prev = v;
            }
        }
        changes
    };
    let mut n = 1 << 10;
    let mut last = count(n);
    while n < 1 << 22 {
        n <<= 1;
        let next = count(n);
        if next == last {
            return next;
        }
        last = next;
    }
    last
}

/// Sturm root counts and isolations against the grid oracle.
pub fn sturm_vs_bisection(seed: u64, count: usize) -> Report {
    let mut report = Report::checks("Sturm root counts");
    for c in random_polys(seed, count, 6) {
        let p = UniPoly::from_ints(&c);
        let sturm = p.count_real_roots(None, None).expect("squarefree");
        let isolated = p.isolate_real_roots().expect("squarefree").len();
        report.push_check(
            "sturm-count",
            &p.to_string(),
            &format!("{c:?}"),
            json!([sturm, isolated]),
            json!(vec![bisection_root_count(&c); 2]),
            json!({}),
        );
    }
    report
}

pub struct Criterion {
    pub id: usize,
    pub name: &'static str,
    pub report: Report,
}

/// All ten corpus checks at full size.
pub fn selftest(seed: u64, budget: &SearchBudget) -> Vec<Criterion> {
    let c = |id, name, report| Criterion { id, name, report };
    vec![
        c(
            1,
            "hermitian trace formula (100 instances)",
            ktf_corpus(seed, 100, budget),
        ),
        c(
            2,
            "quadratic trace formula (100 instances)",
            ktf_commutative_corpus(seed, 100),
        ),
        c(3, "extension counting (30 extensions)", extension_counting(seed, 26)),
        c(4, "Pfister signatures (k <= 3)", pfister_signatures()),
        c(
            5,
            "Morita invariance (50 triples, 20 squares)",
            morita_invariance(seed, 50, 20, budget),
        ),
        c(
            6,
            "signature ring morphism (300 cases)",
            ring_morphism(seed, 300, budget),
        ),
        c(7, "direct products (20 cases)", direct_products(20)),
        c(8, "two-power reference forms", two_power_forms(budget)),
        c(9, "Sturm vs bisection (200 polynomials)", sturm_vs_bisection(seed, 200)),
        c(10, "2-primary matching (10 targets)", two_power_matches(budget)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_runs_pass() {
        let b = SearchBudget::default();
        for r in [
            ktf_corpus(5, 5, &b),
            ktf_commutative_corpus(5, 10),
            extension_counting(5, 3),
            direct_products(20),
            sturm_vs_bisection(5, 20),
        ] {
            assert!(r.all_pass(), "{}", r.to_table());
        }
    }

    #[test]
    fn bisection_oracle_known_counts() {
        assert_eq!(bisection_root_count(&[-2, 0, 1]), 2);
        assert_eq!(bisection_root_count(&[1, 0, 1]), 0);
        assert_eq!(bisection_root_count(&[0, -1, 0, 1]), 3);
    }
}
