//! Acceptance battery: every headline identity the library is expected to
//! reproduce, one test per criterion, exact equality throughout. Each test
//! prints a single pass/fail line.

use mfkit::checks::{run_suite, SuiteConfig};
use mfkit::families::{gen_a_inf_dim1, gen_p2qr, gen_x2h, gen_xn_yg, gen_xy_zn};
use mfkit::groebner::{colon_ideal, groebner, ideal_equal};
use mfkit::modules::{complex_check, cyclic_mcm_enumerate, ModulePresentation, PuncturedClass};
use mfkit::poly::{PolyRing, Polynomial};
use mfkit::{
    poly_parse, CoeffField, FamilyId, MatrixFactorization, MonomialOrder, PolyMatrix,
    RingDescriptor,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const FIELD: CoeffField = CoeffField::Rational;
const MAX_I: u32 = 8;

fn report(n: u32, desc: &str, result: Result<(), String>) {
    match &result {
        Ok(()) => println!("criterion {n:02}: PASS - {desc}"),
        Err(e) => println!("criterion {n:02}: FAIL - {desc}: {e}"),
    }
    if let Err(e) = result {
        panic!("criterion {n} failed: {e}");
    }
}

fn ensure(cond: bool, msg: &str) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.to_string())
    }
}

fn pv(ring: &PolyRing, s: &str) -> Polynomial {
    poly_parse(s, ring).unwrap()
}

fn members() -> Vec<(String, MatrixFactorization)> {
    let mut out = Vec::new();
    for i in 1..=MAX_I {
        out.push((format!("p2qr i={i}"), gen_p2qr(i, FIELD).unwrap()));
        out.push((format!("x2h i={i}"), gen_x2h(i, FIELD).unwrap()));
        out.push((format!("xy-zn n={i}"), gen_xy_zn(i, FIELD).unwrap()));
        out.push((format!("xn-yg n=4 i={i}"), gen_xn_yg(i, 4, FIELD).unwrap()));
        out.push((format!("xn-yg n=5 i={i}"), gen_xn_yg(i, 5, FIELD).unwrap()));
    }
    out
}

#[test]
fn criterion_01_factorization_identities() {
    let body = || -> Result<(), String> {
        for (label, mf) in members() {
            let rep = mf.verify().map_err(|e| e.to_string())?;
            ensure(rep.ok, &format!("{label} fails to verify"))?;
        }
        Ok(())
    };
    report(1, "family products equal f*E on both sides, indices 1..8", body());
}

#[test]
fn criterion_02_knoerrer_sheet() {
    let body = || -> Result<(), String> {
        for (label, mf) in members() {
            for g_is_one in [true, false] {
                let (base, g) = if g_is_one {
                    (mf.clone(), mf.ring.ring().one())
                } else if mf.ring.ring().var_index("a").is_some() {
                    let g = mf.ring.ring().var("a").unwrap();
                    (mf.clone(), g)
                } else {
                    let ext = mf.extend_scalars(&["a"]).map_err(|e| e.to_string())?;
                    let g = ext.ring.ring().var("a").unwrap();
                    (ext, g)
                };
                let sheet = base.knoerrer_sheet(&g, "w").map_err(|e| e.to_string())?;
                let rep = sheet.verify().map_err(|e| e.to_string())?;
                ensure(rep.ok, &format!("sheet of {label} fails to verify"))?;
                // x -> 0 base change has the profile of Cok(A) + Cok(B).
                let pres = sheet.cokernel().map_err(|e| e.to_string())?;
                let w = pres.ring().ring().var("w").unwrap();
                let modw = pres.ring().make_quotient(&[w]).map_err(|e| e.to_string())?;
                let at_zero = pres.base_change(&modw).map_err(|e| e.to_string())?;
                let block = ModulePresentation::new(
                    base.a
                        .block_diag(&base.b)
                        .and_then(|m| m.embed(modw.ring()))
                        .map_err(|e| e.to_string())?,
                    modw,
                )
                .map_err(|e| e.to_string())?;
                ensure(
                    at_zero.same_profile(&block).map_err(|e| e.to_string())?,
                    &format!("base change of sheet of {label} differs from Cok(A) + Cok(B)"),
                )?;
            }
        }
        Ok(())
    };
    report(2, "sheet construction factors f + x^2*g; x=0 recovers M + syzygy(M)", body());
}

#[test]
fn criterion_03_fitting_distinctness() {
    let body = || -> Result<(), String> {
        let expect = |mf: &MatrixFactorization, idx: usize, gens: &[&str]| -> Result<Vec<Polynomial>, String> {
            let coker = mf.cokernel().map_err(|e| e.to_string())?;
            let fit = coker.fitting_ideal(idx).map_err(|e| e.to_string())?;
            let expected: Vec<Polynomial> =
                gens.iter().map(|s| pv(mf.ring.ring(), s)).collect();
            let expected = coker
                .ring()
                .reduced_ideal(&expected)
                .map_err(|e| e.to_string())?;
            if fit != expected {
                return Err(format!(
                    "fitting ideal mismatch: got {:?}",
                    fit.iter().map(|p| p.to_string()).collect::<Vec<_>>()
                ));
            }
            Ok(fit)
        };
        let pairwise = |fits: &[Vec<Polynomial>], label: &str| -> Result<(), String> {
            for i in 0..fits.len() {
                for j in i + 1..fits.len() {
                    if fits[i] == fits[j] {
                        return Err(format!("{label}: indices {} and {} agree", i + 1, j + 1));
                    }
                }
            }
            Ok(())
        };

        let mut fits = Vec::new();
        for i in 1..=MAX_I {
            let mf = gen_p2qr(i, FIELD).unwrap();
            fits.push(expect(&mf, 2, &["p", &format!("r^{i}")])?);
        }
        pairwise(&fits, "p2qr Fitt_2")?;

        let mut fits = Vec::new();
        for i in 1..=MAX_I {
            let mf = gen_x2h(i, FIELD).unwrap();
            fits.push(expect(&mf, 2, &["x", &format!("y^{i}")])?);
        }
        pairwise(&fits, "x2h Fitt_2")?;

        let mut fits = Vec::new();
        for n in 1..=MAX_I {
            let mf = gen_xy_zn(n, FIELD).unwrap();
            fits.push(expect(&mf, 1, &["x", "y", &format!("a^{n}*b")])?);
        }
        pairwise(&fits, "xy-zn I_1")?;

        for n in [4u32, 5] {
            let mut fits = Vec::new();
            for i in 1..=MAX_I {
                let mf = gen_xn_yg(i, n, FIELD).unwrap();
                fits.push(expect(&mf, 3, &["x^2", &format!("x*z^{i}"), "y"])?);
            }
            pairwise(&fits, &format!("xn-yg n={n} Fitt_3"))?;
        }
        Ok(())
    };
    report(3, "fitting ideals take their expected values and are pairwise distinct", body());
}

#[test]
fn criterion_04_localization_decompositions() {
    let body = || -> Result<(), String> {
        let (_, spec_p2qr) = FamilyId::P2qr.spectrum(FIELD);
        for i in 1..=MAX_I {
            let coker = gen_p2qr(i, FIELD).unwrap().cokernel().map_err(|e| e.to_string())?;
            let at_p = coker
                .base_change(
                    &coker
                        .ring()
                        .localize(&spec_p2qr.prime("p").unwrap().invert)
                        .map_err(|e| e.to_string())?,
                )
                .and_then(|p| p.minimalize())
                .map_err(|e| e.to_string())?;
            ensure(
                at_p.generators() == 2 && at_p.relation_count() == 1,
                &format!(
                    "p2qr i={i} at (p): expected 2 generators 1 relation, got {}x{}",
                    at_p.generators(),
                    at_p.relation_count()
                ),
            )?;
            let rel_ok = at_p
                .ring()
                .ideal_equal_in(&at_p.column_ideal(0), &[pv(at_p.ring().ring(), "p")])
                .map_err(|e| e.to_string())?;
            ensure(rel_ok, &format!("p2qr i={i} at (p): relation ideal is not (p)"))?;
            for name in ["q", "r"] {
                let loc = coker
                    .ring()
                    .localize(&spec_p2qr.prime(name).unwrap().invert)
                    .map_err(|e| e.to_string())?;
                let free = coker
                    .base_change(&loc)
                    .and_then(|p| p.is_free())
                    .map_err(|e| e.to_string())?;
                ensure(free.is_free(), &format!("p2qr i={i} at ({name}): expected free"))?;
            }
        }
        let (_, spec_x2h) = FamilyId::X2h.spectrum(FIELD);
        for i in 1..=MAX_I {
            let coker = gen_x2h(i, FIELD).unwrap().cokernel().map_err(|e| e.to_string())?;
            let at_p = coker
                .base_change(
                    &coker
                        .ring()
                        .localize(&spec_x2h.prime("p").unwrap().invert)
                        .map_err(|e| e.to_string())?,
                )
                .and_then(|p| p.minimalize())
                .map_err(|e| e.to_string())?;
            ensure(
                at_p.generators() == 2 && at_p.relation_count() == 1,
                &format!("x2h i={i} at (x): expected 2 generators 1 relation"),
            )?;
            let rel_ok = at_p
                .ring()
                .ideal_equal_in(&at_p.column_ideal(0), &[pv(at_p.ring().ring(), "x")])
                .map_err(|e| e.to_string())?;
            ensure(rel_ok, &format!("x2h i={i} at (x): relation ideal is not (x)"))?;
        }
        Ok(())
    };
    report(4, "localized minimal presentations have the split rank-1-plus-residue shape", body());
}

#[test]
fn criterion_05_cm_plus_classification() {
    let body = || -> Result<(), String> {
        let cases: Vec<(FamilyId, Option<u32>)> = vec![
            (FamilyId::P2qr, None),
            (FamilyId::X2h, None),
            (FamilyId::XyZn, None),
            (FamilyId::XnYg, Some(4)),
            (FamilyId::XnYg, Some(5)),
        ];
        for (fam, n) in cases {
            let (_, spec) = fam.spectrum(FIELD);
            for i in 1..=MAX_I {
                let mf = fam.generate(i, n, FIELD).map_err(|e| e.to_string())?;
                let cm = mf
                    .cokernel()
                    .and_then(|p| p.classify_punctured_locus(&spec))
                    .map_err(|e| e.to_string())?;
                let cn = mf
                    .syzygy()
                    .cokernel()
                    .and_then(|p| p.classify_punctured_locus(&spec))
                    .map_err(|e| e.to_string())?;
                ensure(
                    cm.verdict == PuncturedClass::CmPlus,
                    &format!("{} i={i}: module not CM+", fam.name()),
                )?;
                ensure(
                    cn.verdict == PuncturedClass::CmPlus,
                    &format!("{} i={i}: syzygy not CM+", fam.name()),
                )?;
                let agree = cm.per_prime.len() == cn.per_prime.len()
                    && cm
                        .per_prime
                        .iter()
                        .zip(&cn.per_prime)
                        .all(|((n1, f1), (n2, f2))| n1 == n2 && f1.is_free() == f2.is_free());
                ensure(agree, &format!("{} i={i}: verdict changed under syzygy", fam.name()))?;
            }
        }
        Ok(())
    };
    report(5, "every family member and its syzygy classify as CM+, stably", body());
}

#[test]
fn criterion_06_cyclic_enumerations() {
    let body = || -> Result<(), String> {
        for (fam, expected) in [
            (FamilyId::P2qr, vec!["p", "p*q", "p*r", "p*q*r"]),
            (FamilyId::X2h, vec!["x", "x*h"]),
        ] {
            let (base, factors, spec) = fam.cyclic_setup(FIELD).unwrap();
            let tagged =
                cyclic_mcm_enumerate(&base, &factors, &spec).map_err(|e| e.to_string())?;
            let mut got: Vec<String> = tagged
                .iter()
                .filter(|c| c.class.verdict == PuncturedClass::CmPlus)
                .map(|c| c.divisor.to_string())
                .collect();
            got.sort();
            let mut want: Vec<String> = expected
                .iter()
                .map(|s| pv(base.ring(), s).to_string())
                .collect();
            want.sort();
            ensure(
                got == want,
                &format!("{}: CM+ cyclics {:?}, expected {:?}", fam.name(), got, want),
            )?;
        }
        Ok(())
    };
    report(6, "cyclic CM+ modules are exactly the expected divisor sets", body());
}

#[test]
fn criterion_07_quotient_decomposition_profiles() {
    let body = || -> Result<(), String> {
        for i in 1..=MAX_I {
            let mf = gen_p2qr(i, FIELD).unwrap();
            let coker = mf.cokernel().map_err(|e| e.to_string())?;
            let syz_coker = mf.syzygy().cokernel().map_err(|e| e.to_string())?;
            let ring = coker.ring().clone();
            let base = ring.ring().clone();

            let check = |label: &str,
                         src: &ModulePresentation,
                         modulus: &str,
                         blocks: &dyn Fn(&RingDescriptor) -> Result<ModulePresentation, String>|
             -> Result<(), String> {
                let target = ring
                    .make_quotient(&[pv(&base, modulus)])
                    .map_err(|e| e.to_string())?;
                let moved = src.base_change(&target).map_err(|e| e.to_string())?;
                let want = blocks(&target)?;
                let ok = moved.same_profile(&want).map_err(|e| e.to_string())?;
                ensure(ok, &format!("i={i}: profile mismatch for {label}"))
            };

            let ri = format!("r^{i}");
            // Cok(A) mod r: two p-cyclics plus a free rank one.
            check("M/(r)", &coker, "r", &|t| {
                ModulePresentation::cyclic(t, &pv(&base, "p"))
                    .and_then(|a| a.direct_sum(&ModulePresentation::cyclic(t, &pv(&base, "p"))?))
                    .and_then(|a| a.direct_sum(&ModulePresentation::free(t, 1)))
                    .map_err(|e| e.to_string())
            })?;
            // Cok(A) mod q and mod p*q: free plus the 2x2 upper-triangular block.
            let two_by_two = |t: &RingDescriptor| -> Result<ModulePresentation, String> {
                let m = PolyMatrix::from_rows(
                    &base,
                    vec![
                        vec![pv(&base, "p"), pv(&base, &ri)],
                        vec![base.zero(), pv(&base, "p")],
                    ],
                )
                .map_err(|e| e.to_string())?;
                ModulePresentation::new(m, t.clone()).map_err(|e| e.to_string())
            };
            check("M/(q)", &coker, "q", &|t| {
                ModulePresentation::free(t, 1)
                    .direct_sum(&two_by_two(t)?)
                    .map_err(|e| e.to_string())
            })?;
            check("M/(pq)", &coker, "p*q", &|t| {
                ModulePresentation::free(t, 1)
                    .direct_sum(&two_by_two(t)?)
                    .map_err(|e| e.to_string())
            })?;
            // Cok(B) mod q and mod r: one p-cyclic plus free rank two.
            for modulus in ["q", "r"] {
                check(&format!("N/({modulus})"), &syz_coker, modulus, &|t| {
                    ModulePresentation::cyclic(t, &pv(&base, "p"))
                        .and_then(|a| a.direct_sum(&ModulePresentation::free(t, 2)))
                        .map_err(|e| e.to_string())
                })?;
            }
            // Cok(B) mod p*r: the two-generator column plus a free rank one.
            check("N/(pr)", &syz_coker, "p*r", &|t| {
                let m = PolyMatrix::from_rows(
                    &base,
                    vec![vec![pv(&base, "p")], vec![pv(&base, &format!("q*r^{i}"))]],
                )
                .map_err(|e| e.to_string())?;
                ModulePresentation::new(m, t.clone())
                    .and_then(|a| a.direct_sum(&ModulePresentation::free(t, 1)))
                    .map_err(|e| e.to_string())
            })?;

            // Collapse branch: express the third irreducible inside (p, q) by
            // substituting p + q for it; the reduction mod q then splits into
            // a free part and two p-cyclics. First confirm the membership
            // that drives the simplification.
            let s2 = RingDescriptor::polynomial(&["p", "q"], FIELD);
            let b2 = s2.ring().clone();
            let order = MonomialOrder::degrevlex(2);
            let gb = groebner(&b2, &[pv(&b2, "p"), pv(&b2, "q")], &order)
                .map_err(|e| e.to_string())?;
            let mut rpow = b2.one();
            for _ in 0..i {
                rpow = rpow.mul(&pv(&b2, "p + q")).map_err(|e| e.to_string())?;
            }
            ensure(
                gb.normal_form(&rpow).is_zero(),
                "substituted power does not lie in (p, q)",
            )?;
            let f2 = pv(&b2, "p^2*q").mul(&rpow).map_err(|e| e.to_string())?;
            let r2q = s2
                .make_quotient(&[f2])
                .and_then(|r| r.make_quotient(&[pv(&b2, "q")]))
                .map_err(|e| e.to_string())?;
            let sub = PolyMatrix::from_rows(
                &b2,
                vec![
                    vec![pv(&b2, "p"), b2.zero(), rpow.clone()],
                    vec![b2.zero(), pv(&b2, "p*q"), pv(&b2, "p")],
                    vec![
                        b2.zero(),
                        b2.zero(),
                        pv(&b2, "p").mul(&rpow).map_err(|e| e.to_string())?,
                    ],
                ],
            )
            .map_err(|e| e.to_string())?;
            let sub = ModulePresentation::new(sub, r2q.clone()).map_err(|e| e.to_string())?;
            let want = ModulePresentation::free(&r2q, 1)
                .direct_sum(&ModulePresentation::cyclic(&r2q, &pv(&b2, "p")).unwrap())
                .and_then(|a| a.direct_sum(&ModulePresentation::cyclic(&r2q, &pv(&b2, "p")).unwrap()))
                .map_err(|e| e.to_string())?;
            ensure(
                sub.same_profile(&want).map_err(|e| e.to_string())?,
                &format!("i={i}: collapsed M/(q) profile mismatch"),
            )?;
        }
        Ok(())
    };
    report(7, "quotient reductions have the expected direct-sum profiles", body());
}

#[test]
fn criterion_08_annihilator_identities() {
    let body = || -> Result<(), String> {
        // Complete-intersection witness T.
        let s = RingDescriptor::polynomial(&["u", "v", "z"], FIELD);
        let b = s.ring().clone();
        let t = s
            .make_quotient(&[pv(&b, "u*z - u^2 - v^3"), pv(&b, "z^2")])
            .map_err(|e| e.to_string())?;
        let ann = t.annihilator(&pv(&b, "z")).map_err(|e| e.to_string())?;
        ensure(
            t.ideal_equal_in(&ann, &[pv(&b, "z")]).map_err(|e| e.to_string())?,
            "(0 : z) != (z) in the complete-intersection witness",
        )?;

        let s = RingDescriptor::polynomial(&["x", "y", "z"], FIELD);
        let b = s.ring().clone();
        let r = s.make_quotient(&[pv(&b, "x*y*z")]).map_err(|e| e.to_string())?;
        let ann = r.annihilator(&pv(&b, "x*y")).map_err(|e| e.to_string())?;
        ensure(
            r.ideal_equal_in(&ann, &[pv(&b, "z")]).map_err(|e| e.to_string())?,
            "(0 : xy) != (z) over S/(xyz)",
        )?;

        let s = RingDescriptor::polynomial(&["x", "y"], FIELD);
        let b = s.ring().clone();
        let r = s.make_quotient(&[pv(&b, "x^2")]).map_err(|e| e.to_string())?;
        let ann = r.annihilator(&pv(&b, "x")).map_err(|e| e.to_string())?;
        ensure(
            r.ideal_equal_in(&ann, &[pv(&b, "x")]).map_err(|e| e.to_string())?,
            "(0 : x) != (x) over S/(x^2)",
        )?;
        Ok(())
    };
    report(8, "annihilator identities hold in all three witness rings", body());
}

#[test]
fn criterion_09_resolution_complexes() {
    // Composition-zero and minimality only; exactness is out of scope.
    let body = || -> Result<(), String> {
        let s = RingDescriptor::polynomial(&["p", "q", "r"], FIELD);
        let b = s.ring().clone();
        let t = s.make_quotient(&[pv(&b, "p*q")]).map_err(|e| e.to_string())?;
        for i in 1..=MAX_I {
            let d1 = PolyMatrix::from_rows(
                &b,
                vec![
                    vec![pv(&b, "p"), pv(&b, &format!("r^{i}"))],
                    vec![b.zero(), pv(&b, "p")],
                ],
            )
            .unwrap();
            let d2 = PolyMatrix::from_rows(&b, vec![vec![pv(&b, "q")], vec![b.zero()]]).unwrap();
            let d3 = PolyMatrix::from_rows(&b, vec![vec![pv(&b, "p")]]).unwrap();
            let d4 = PolyMatrix::from_rows(&b, vec![vec![pv(&b, "q")]]).unwrap();
            let d5 = PolyMatrix::from_rows(&b, vec![vec![pv(&b, "p")]]).unwrap();
            let rep = complex_check(&[d1, d2, d3, d4, d5], &t).map_err(|e| e.to_string())?;
            ensure(rep.ok, &format!("i={i}: sequence over S/(pq) fails: {:?}", rep.detail))?;
        }
        for i in 1..=MAX_I {
            for mf in [gen_p2qr(i, FIELD).unwrap(), gen_x2h(i, FIELD).unwrap()] {
                let r = mf.ring.make_quotient(std::slice::from_ref(&mf.f)).map_err(|e| e.to_string())?;
                let rep = complex_check(
                    &[mf.a.clone(), mf.b.clone(), mf.a.clone(), mf.b.clone()],
                    &r,
                )
                .map_err(|e| e.to_string())?;
                ensure(rep.ok, &format!("i={i}: periodic complex fails: {:?}", rep.detail))?;
            }
        }
        Ok(())
    };
    report(9, "resolution complexes compose to zero with no unit entries", body());
}

#[test]
fn criterion_10_property_suites() {
    let body = || -> Result<(), String> {
        // 200 randomized small ideals: basis and normal-form round trips.
        let ring = PolyRing::new(&["x", "y", "z"], FIELD);
        let order = MonomialOrder::degrevlex(3);
        let mut rng = ChaCha8Rng::seed_from_u64(90125);
        let random_poly = |rng: &mut ChaCha8Rng| -> Polynomial {
            let mut p = ring.zero();
            for _ in 0..rng.gen_range(1..=3) {
                let exps: Vec<u32> = (0..3).map(|_| rng.gen_range(0..3)).collect();
                let c = rng.gen_range(-3i64..=3);
                p.add_term(mfkit::Monomial(exps), mfkit::Scalar::from_i64(FIELD, c));
            }
            p
        };
        for case in 0..200 {
            let gens: Vec<Polynomial> = (0..rng.gen_range(1..=3))
                .map(|_| random_poly(&mut rng))
                .collect();
            let gb = groebner(&ring, &gens, &order).map_err(|e| e.to_string())?;
            for g in &gens {
                ensure(
                    gb.normal_form(g).is_zero(),
                    &format!("case {case}: generator escapes its own ideal"),
                )?;
            }
            let gb2 = groebner(&ring, gb.gens(), &order).map_err(|e| e.to_string())?;
            ensure(gb2.gens() == gb.gens(), &format!("case {case}: basis not idempotent"))?;
            let probe = random_poly(&mut rng);
            let nf = gb.normal_form(&probe);
            ensure(gb.normal_form(&nf) == nf, &format!("case {case}: normal form not idempotent"))?;
            let mut shuffled: Vec<Polynomial> = gens.iter().rev().cloned().collect();
            shuffled[0] = shuffled[0].scale(&mfkit::Scalar::from_i64(FIELD, 5));
            ensure(
                ideal_equal(&ring, &gens, &shuffled, &order).map_err(|e| e.to_string())?,
                &format!("case {case}: equality unstable under shuffle/scale"),
            )?;
        }

        // Colon agrees with the divisibility oracle on monomial ideals.
        let mut rng2 = ChaCha8Rng::seed_from_u64(5150);
        for case in 0..40 {
            let monomial = |rng: &mut ChaCha8Rng| -> Polynomial {
                let exps: Vec<u32> = (0..3).map(|_| rng.gen_range(0..3)).collect();
                let mut p = ring.zero();
                p.add_term(mfkit::Monomial(exps), mfkit::Scalar::one(FIELD));
                p
            };
            let gens: Vec<Polynomial> = (0..rng2.gen_range(1..=3))
                .map(|_| monomial(&mut rng2))
                .collect();
            let g = monomial(&mut rng2);
            let computed = colon_ideal(&ring, &gens, &g, &order).map_err(|e| e.to_string())?;
            // Oracle: (m_i : g) = m_i / gcd(m_i, g), monomial by monomial.
            let oracle: Vec<Polynomial> = gens
                .iter()
                .map(|m| {
                    let (mm, _) = m.terms().next().unwrap();
                    let (gm, _) = g.terms().next().unwrap();
                    let exps: Vec<u32> = mm
                        .0
                        .iter()
                        .zip(&gm.0)
                        .map(|(a, b)| a.saturating_sub(*b))
                        .collect();
                    let mut p = ring.zero();
                    p.add_term(mfkit::Monomial(exps), mfkit::Scalar::one(FIELD));
                    p
                })
                .collect();
            ensure(
                ideal_equal(&ring, &computed, &oracle, &order).map_err(|e| e.to_string())?,
                &format!("case {case}: colon disagrees with the divisibility oracle"),
            )?;
        }

        // Minimalization preserves every Fitting ideal on suite modules.
        for (label, mf) in members().into_iter().step_by(3) {
            let coker = mf.cokernel().map_err(|e| e.to_string())?;
            let min = coker.minimalize().map_err(|e| e.to_string())?;
            for r in 0..=coker.generators() {
                ensure(
                    coker.fitting_ideal(r).map_err(|e| e.to_string())?
                        == min.fitting_ideal(r).map_err(|e| e.to_string())?,
                    &format!("{label}: fitting index {r} changed under minimalization"),
                )?;
            }
        }

        // Syzygy involution on every factorization, and the freeness/Fitting
        // cross-check on every localized module.
        for (label, mf) in members() {
            ensure(mf.syzygy().syzygy() == mf, &format!("{label}: syzygy not involutive"))?;
        }
        for j in 1..=MAX_I {
            let mf = gen_a_inf_dim1(j, FIELD).unwrap();
            ensure(mf.syzygy().syzygy() == mf, "a-inf-1d: syzygy not involutive")?;
        }
        for fam in [FamilyId::P2qr, FamilyId::X2h, FamilyId::AInf1d] {
            let (_, spec) = fam.spectrum(FIELD);
            for i in 1..=4u32 {
                let coker = fam
                    .generate(i, None, FIELD)
                    .and_then(|m| m.cokernel())
                    .map_err(|e| e.to_string())?;
                for prime in &spec.primes {
                    let loc = coker.ring().localize(&prime.invert).map_err(|e| e.to_string())?;
                    let moved = coker.base_change(&loc).map_err(|e| e.to_string())?;
                    if let mfkit::modules::Freeness::Free(rank) =
                        moved.is_free().map_err(|e| e.to_string())?
                    {
                        let top = moved.fitting_ideal(rank).map_err(|e| e.to_string())?;
                        ensure(
                            top.len() == 1 && top[0].is_one(),
                            &format!("{} i={i}: Fitt_rank not the unit ideal", fam.name()),
                        )?;
                        if rank > 0 {
                            let below =
                                moved.fitting_ideal(rank - 1).map_err(|e| e.to_string())?;
                            ensure(
                                !(below.len() == 1 && below[0].is_one()),
                                &format!("{} i={i}: Fitt_(rank-1) is the unit ideal", fam.name()),
                            )?;
                        }
                    }
                }
            }
        }
        Ok(())
    };
    report(10, "randomized and derived property batteries hold", body());
}

#[test]
fn full_check_suite_passes_and_is_deterministic() {
    let cfg = SuiteConfig::default();
    let a = run_suite(&cfg);
    let failed: Vec<&str> = a
        .iter()
        .filter(|r| !r.passed())
        .map(|r| r.check_id.as_str())
        .collect();
    assert!(failed.is_empty(), "failing checks: {failed:?}");
    let b = run_suite(&cfg);
    assert_eq!(
        serde_json::to_string(&a).unwrap(),
        serde_json::to_string(&b).unwrap()
    );
}
