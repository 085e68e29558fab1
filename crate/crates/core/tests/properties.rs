use std::collections::BTreeMap;
use std::sync::Arc;

use muord::padic::{BinomialVector, PrecisionContext, UExpansion};
use muord::shimura::{Orbit, PelDatum};
use muord::suites::{theta_datum, theta_weight, SuiteConfig};
use muord::theta::{
    moment, theta_index, CoordinateAssignment, MeasureHandle, TaggedVector, ThetaOperator,
};
use muord::weights::partition::{partitions_of, sub_partitions};
use muord::weights::{
    char_congruent, classify, is_simple, lr_coefficient, restrict_to_blocks, restrict_to_levi,
    weights_coprime, DominantWeight, LRDecomposition, LeviWeight, SimpleReading,
};
use proptest::prelude::*;

const DEGREE: u32 = 6;

fn ctx2() -> Arc<PrecisionContext> {
    Arc::new(PrecisionContext::new(3, 3, DEGREE, ["u", "v"]).unwrap())
}

fn ctx3() -> Arc<PrecisionContext> {
    Arc::new(PrecisionContext::new(3, 3, DEGREE, ["u", "v", "w"]).unwrap())
}

fn series(arity: usize) -> impl Strategy<Value = Vec<(Vec<u32>, i64)>> {
    let bound = DEGREE / arity as u32;
    prop::collection::vec((prop::collection::vec(0..=bound, arity), any::<i64>()), 0..8)
}

fn expansion(ctx: &Arc<PrecisionContext>, terms: Vec<(Vec<u32>, i64)>) -> UExpansion {
    UExpansion::from_terms(Arc::clone(ctx), terms).unwrap()
}

fn binomial(arity: usize, max: u64) -> impl Strategy<Value = Vec<(Vec<u64>, i64)>> {
    prop::collection::vec((prop::collection::vec(0..max, arity), -50i64..50), 1..5)
}

fn orbit() -> impl Strategy<Value = Orbit> {
    (1u32..=8, 1usize..=8)
        .prop_flat_map(|(n, e)| (Just(n), prop::collection::vec(0..=n, e)))
        .prop_map(|(n, f)| Orbit::new(n, f, false).unwrap())
}

fn dominant(len: usize, hi: i64) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(0..=hi, len).prop_map(|mut w| {
        w.sort_unstable_by(|a, b| b.cmp(a));
        w
    })
}

fn composition(n: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(any::<bool>(), n.saturating_sub(1)).prop_map(move |cuts| {
        let mut out = vec![1];
        for c in cuts {
            if c {
                out.push(1);
            } else {
                *out.last_mut().unwrap() += 1;
            }
        }
        out
    })
}

fn naive_congruent(a: i64, b: i64, p: u64, m: u32) -> bool {
    let q = p.pow(m) as i128;
    let inv = |g: i128| (1..q).find(|h| g * h % q == 1).unwrap();
    let pow = |g: i128, e: i64| {
        let base = if e < 0 { inv(g) } else { g };
        (0..e.unsigned_abs()).fold(1i128, |acc, _| acc * base % q)
    };
    (1..q).filter(|g| g % p as i128 != 0).all(|g| pow(g, a) == pow(g, b))
}

fn small_datum() -> PelDatum {
    PelDatum::with_duals(3, [Orbit::new(3, vec![1, 2], false).unwrap()]).unwrap()
}

fn datum_weight(d: &PelDatum, hi: i64) -> impl Strategy<Value = DominantWeight> {
    let d = d.clone();
    let lens: Vec<usize> = (0..d.embeddings().len()).map(|i| d.a_plus(i) as usize).collect();
    lens.into_iter()
        .map(|l| dominant(l, hi))
        .collect::<Vec<_>>()
        .prop_map(move |w| DominantWeight::new(&d, w).unwrap())
}

#[test]
fn lr_coefficients_are_symmetric() {
    for n in 0..=6 {
        for lambda in partitions_of(n, 4) {
            for mu in sub_partitions(&lambda, 4) {
                let rest = n - mu.iter().sum::<u32>();
                for nu in partitions_of(rest, 4) {
                    assert_eq!(
                        lr_coefficient(&lambda, &mu, &nu),
                        lr_coefficient(&lambda, &nu, &mu),
                        "{lambda:?} {mu:?} {nu:?}"
                    );
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn series_form_a_commutative_ring(a in series(2), b in series(2), c in series(2)) {
        let ctx = ctx2();
        let (f, g, h) = (expansion(&ctx, a), expansion(&ctx, b), expansion(&ctx, c));
        prop_assert_eq!(f.add(&g).unwrap(), g.add(&f).unwrap());
        prop_assert_eq!(f.mul(&g).unwrap(), g.mul(&f).unwrap());
        prop_assert_eq!(f.mul(&g).unwrap().mul(&h).unwrap(), f.mul(&g.mul(&h).unwrap()).unwrap());
        prop_assert_eq!(
            f.mul(&g.add(&h).unwrap()).unwrap(),
            f.mul(&g).unwrap().add(&f.mul(&h).unwrap()).unwrap()
        );
        prop_assert_eq!(f.mul(&UExpansion::one(ctx.clone())).unwrap(), f.clone());
        prop_assert!(f.sub(&f).unwrap().is_zero());
    }

    #[test]
    fn theta_satisfies_leibniz(a in series(2), b in series(2), c in 0usize..2) {
        let ctx = ctx2();
        let (f, g) = (expansion(&ctx, a), expansion(&ctx, b));
        let lhs = theta_index(&f.mul(&g).unwrap(), c);
        let rhs = theta_index(&f, c).mul(&g).unwrap().add(&f.mul(&theta_index(&g, c)).unwrap()).unwrap();
        // Terms of degree D + 1 dropped from f g feed degree D under theta.
        prop_assert_eq!(lhs.truncated(DEGREE - 1), rhs.truncated(DEGREE - 1));
    }

    #[test]
    fn theta_operators_commute(a in series(2), k1 in prop::collection::vec(0u32..5, 2), k2 in prop::collection::vec(0u32..5, 2)) {
        let ctx = ctx2();
        let f = expansion(&ctx, a);
        let t1 = ThetaOperator::new(ctx.clone(), k1.clone()).unwrap();
        let t2 = ThetaOperator::new(ctx.clone(), k2.clone()).unwrap();
        let sum: Vec<u32> = k1.iter().zip(&k2).map(|(x, y)| x + y).collect();
        let t12 = ThetaOperator::new(ctx.clone(), sum).unwrap();
        let one_way = t2.apply(&t1.apply(&f).unwrap()).unwrap();
        prop_assert_eq!(&one_way, &t1.apply(&t2.apply(&f).unwrap()).unwrap());
        prop_assert_eq!(&one_way, &t12.apply(&f).unwrap());
        prop_assert_eq!(t12.apply(&f).unwrap(), t12.apply_iterated(&f).unwrap());
    }

    #[test]
    fn binomial_basis_is_an_eigenbasis(a in 0u64..=3, b in 0u64..=3, k in prop::collection::vec(0u32..6, 2), c in -20i64..20) {
        let ctx = ctx2();
        let v = BinomialVector::from_terms(ctx.clone(), [(vec![a, b], c)]).unwrap();
        let op = ThetaOperator::new(ctx.clone(), k).unwrap();
        let direct = op.apply(&v.to_series()).unwrap();
        prop_assert_eq!(&direct, &op.apply_binomial(&v).unwrap().to_series());
        prop_assert_eq!(direct, v.to_series().scale_residue(op.eigenvalue(&[a, b])));
    }

    #[test]
    fn restriction_commutes_with_determinant_twist(w in dominant(4, 3), blocks in composition(4), k in -3i64..=3) {
        let twisted: Vec<i64> = w.iter().map(|x| x + k).collect();
        let shifted: BTreeMap<Vec<Vec<i64>>, u64> = restrict_to_blocks(&w, &blocks)
            .unwrap()
            .into_iter()
            .map(|(parts, m)| (parts.into_iter().map(|p| p.into_iter().map(|x| x + k).collect()).collect(), m))
            .collect();
        prop_assert_eq!(restrict_to_blocks(&twisted, &blocks).unwrap(), shifted);
    }

    #[test]
    fn trivial_and_scalar_restrictions(w in dominant(4, 3), blocks in composition(4), k in -3i64..=3) {
        let whole = restrict_to_blocks(&w, &[4]).unwrap();
        prop_assert_eq!(whole, BTreeMap::from([(vec![w.clone()], 1)]));
        let scalar = restrict_to_blocks(&[k; 4], &blocks).unwrap();
        let parts: Vec<Vec<i64>> = blocks.iter().map(|&b| vec![k; b]).collect();
        prop_assert_eq!(scalar, BTreeMap::from([(parts, 1)]));
    }

    #[test]
    fn weights_of_different_size_are_coprime(
        (k1, k2) in (datum_weight(&small_datum(), 3), datum_weight(&small_datum(), 3))
    ) {
        let d = small_datum();
        prop_assume!(k1.size() != k2.size());
        prop_assert!(weights_coprime(&k1, &k2, &d).unwrap());
        let m1 = restrict_to_levi(&k1, &d).unwrap();
        let m2 = restrict_to_levi(&k2, &d).unwrap();
        prop_assert!(m1.components.keys().all(|w| !m2.components.contains_key(w)));
    }

    #[test]
    fn scalar_weights_restrict_to_themselves(ks in prop::collection::vec(0i64..4, 4)) {
        let d = small_datum();
        let entries: Vec<Vec<i64>> =
            (0..4).map(|i| vec![ks[i]; d.a_plus(i) as usize]).collect();
        let kappa = DominantWeight::new(&d, entries).unwrap();
        prop_assert!(kappa.is_scalar());
        let m = restrict_to_levi(&kappa, &d).unwrap();
        prop_assert_eq!(m.len(), 1);
        prop_assert_eq!(m.multiplicity(&LeviWeight::from_dominant(&kappa, &d).unwrap()), 1);
    }

    #[test]
    fn char_congruent_matches_enumeration(
        p in prop::sample::select(vec![3u64, 5, 7]),
        m in 1u32..=2,
        pairs in prop::collection::vec((-30i64..=30, -30i64..=30), 1..4)
    ) {
        let (a, b): (Vec<i64>, Vec<i64>) = pairs.iter().copied().unzip();
        let truth = pairs.iter().all(|&(x, y)| naive_congruent(x, y, p, m));
        prop_assert_eq!(char_congruent(&a, &b, m, p).unwrap(), truth);
    }

    #[test]
    fn simple_weights_are_dominant_and_sum_symmetric(k in 0i64..8, a in 0i64..8, b in 0i64..8, noise in prop::collection::vec(0i64..2, 8)) {
        let d = theta_datum(3);
        let base = theta_weight(&d, k, a.max(b), a.min(b));
        let mut blocks = base.blocks().to_vec();
        let mut it = noise.iter();
        for t in blocks.iter_mut().flatten().flatten() {
            *t += it.next().copied().unwrap_or(0) * i64::from(*t == 0);
        }
        for lambda in [base, LeviWeight::new(&d, blocks).unwrap_or_else(|_| LeviWeight::zero(&d).unwrap())] {
            if !is_simple(&lambda, &d, SimpleReading::HighestSlope).unwrap() {
                continue;
            }
            let flat: Vec<Vec<i64>> = lambda.concatenated();
            for t in &flat {
                prop_assert!(t.windows(2).all(|w| w[0] >= w[1]), "{t:?}");
            }
            let kappa = DominantWeight::new(&d, flat).unwrap();
            prop_assert!(classify(&kappa, &d).unwrap().sum_symmetric);
        }
    }

    #[test]
    fn moments_are_linear(s1 in binomial(3, 27), s2 in binomial(3, 27), k in 0i64..6, a in 0i64..6, b in 0i64..6, c in -9i64..9) {
        let d = theta_datum(3);
        let ctx = ctx3();
        let asg = CoordinateAssignment::canonical(ctx.clone(), &d, SimpleReading::HighestSlope).unwrap();
        let lambda = theta_weight(&d, k, a.max(b), a.min(b));
        let v1 = BinomialVector::from_terms(ctx.clone(), s1).unwrap();
        let v2 = BinomialVector::from_terms(ctx.clone(), s2).unwrap();
        let combined = MeasureHandle::Binomial(v1.scale(c).add(&v2).unwrap());
        let lhs = moment(&combined, &lambda, &asg, &d).unwrap();
        let m1 = moment(&MeasureHandle::Binomial(v1.clone()), &lambda, &asg, &d).unwrap();
        let m2 = moment(&MeasureHandle::Binomial(v2), &lambda, &asg, &d).unwrap();
        prop_assert_eq!(&lhs, &m1.scale(c).add(&m2).unwrap());
        let order: u32 = ThetaOperator::from_weight(&asg, &lambda, &d).unwrap().exponents().iter().sum();
        if order <= DEGREE {
            let as_series = moment(&MeasureHandle::Series(v1.to_series()), &lambda, &asg, &d).unwrap();
            prop_assert_eq!(as_series.truncated(DEGREE - order), m1.truncated(DEGREE - order));
        }
    }

    #[test]
    fn tags_multiply_under_theta(seed in binomial(3, 27), w1 in (0i64..5, 0i64..5, 0i64..5), w2 in (0i64..5, 0i64..5, 0i64..5)) {
        let d = theta_datum(3);
        let ctx = ctx3();
        let asg = CoordinateAssignment::canonical(ctx.clone(), &d, SimpleReading::HighestSlope).unwrap();
        let l1 = theta_weight(&d, w1.0, w1.1.max(w1.2), w1.1.min(w1.2));
        let l2 = theta_weight(&d, w2.0, w2.1.max(w2.2), w2.1.min(w2.2));
        let sum = theta_weight(&d, w1.0 + w2.0, w1.1.max(w1.2) + w2.1.max(w2.2), w1.1.min(w1.2) + w2.1.min(w2.2));
        let start = TaggedVector { character: vec![0; 8], vector: BinomialVector::from_terms(ctx, seed).unwrap() };
        let twice = start.theta(&l1, &asg, &d).unwrap().theta(&l2, &asg, &d).unwrap();
        prop_assert_eq!(twice, start.theta(&sum, &asg, &d).unwrap());
    }

    #[test]
    fn orbit_invariants(o in orbit()) {
        prop_assert_eq!(o.newton_slopes(), o.newton_from_multtype());
        prop_assert_eq!(o.dual().dual(), o.clone());
        prop_assert_eq!(o.dual().newton_slopes(), o.newton_slopes().reflected(o.e() as u32));
        prop_assert_eq!(o.newton_slopes().rank(), o.n());
        prop_assert_eq!(o.gr_ranks().lower_sum(), o.moonen_parameter_count());
    }

    #[test]
    fn serde_round_trips(a in series(2), s in binomial(2, 9), o in orbit(), seed in any::<u64>()) {
        let ctx = ctx2();
        let f = expansion(&ctx, a);
        let back: UExpansion = serde_json::from_str(&serde_json::to_string(&f).unwrap()).unwrap();
        prop_assert_eq!(&back, &f);

        let h = MeasureHandle::Binomial(BinomialVector::from_terms(ctx, s).unwrap());
        let back: MeasureHandle = serde_json::from_str(&serde_json::to_string(&h).unwrap()).unwrap();
        prop_assert_eq!(back, h);

        let d = PelDatum::with_duals(5, [o]).unwrap();
        let back: PelDatum = serde_json::from_str(&serde_json::to_string(&d).unwrap()).unwrap();
        prop_assert_eq!(back, d);

        let cfg = SuiteConfig { seed, ..SuiteConfig::default() };
        let back: SuiteConfig = serde_json::from_str(&serde_json::to_string(&cfg).unwrap()).unwrap();
        prop_assert_eq!(back, cfg);
    }

    #[test]
    fn decompositions_round_trip(kappa in datum_weight(&small_datum(), 2)) {
        let d = small_datum();
        let m = restrict_to_levi(&kappa, &d).unwrap();
        let text = serde_json::to_string(&m.to_records(&d)).unwrap();
        let back = LRDecomposition::from_records(&d, &serde_json::from_str::<Vec<_>>(&text).unwrap()).unwrap();
        prop_assert_eq!(back, m);
    }
}
