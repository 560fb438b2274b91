use std::collections::HashMap;

use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use brauer::algebra::{cartan, cartan_det, walk, TreeAlgebra};
use brauer::qpoly::{congruent_mod_phi, cyclotomic, QPoly};
use brauer::tree::{
    fold, fold_automorphism, parse, planar_iso, quotient, random_tree, relabel, serialize,
    BrauerTree, IsoFlags, Multiplicity,
};
use brauer::validation::{check, Certificate, NoEnv};

fn tree(seed: u64, edges: usize, m: u32) -> BrauerTree {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_tree(&mut rng, "r", edges, Multiplicity::Concrete(m))
}

fn leaves(t: &BrauerTree) -> Vec<usize> {
    (0..t.num_vertices())
        .filter(|&v| t.valency(v) == 1)
        .collect()
}

fn order_of(p: &[usize]) -> usize {
    (1..=p.len().max(1))
        .find(|&k| {
            (0..p.len()).all(|v| {
                let mut c = v;
                for _ in 0..k {
                    c = p[c];
                }
                c == v
            })
        })
        .unwrap()
}

fn poly() -> impl Strategy<Value = QPoly> {
    prop::collection::vec(-20i64..=20, 0..7).prop_map(|c| QPoly::from_i64s(&c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn serialize_parse_is_stable(seed in any::<u64>(), edges in 1usize..12, m in 1u32..5) {
        let t = tree(seed, edges, m);
        let s = serialize(&t);
        let back = parse(&s).unwrap();
        prop_assert_eq!(serialize(&back), s);
        prop_assert!(planar_iso(&t, &back, &IsoFlags::exact()).is_some());
    }

    #[test]
    fn relabelling_there_and_back(seed in any::<u64>(), edges in 1usize..10) {
        let t = tree(seed, edges, 2);
        let there: HashMap<String, String> = t
            .vertices()
            .iter()
            .map(|v| (v.label.clone(), format!("w_{}", v.label)))
            .collect();
        let back: HashMap<String, String> = there.iter().map(|(a, b)| (b.clone(), a.clone())).collect();
        let r = relabel(&t, &there).unwrap();
        prop_assert!(planar_iso(&t, &r, &IsoFlags::structural()).is_some());
        prop_assert_eq!(serialize(&relabel(&r, &back).unwrap()), serialize(&t));
    }

    #[test]
    fn planar_iso_respects_orientation(seed in any::<u64>(), edges in 3usize..10) {
        let t = tree(seed, edges, 1);
        let (vs, es, orders) = t.to_specs();
        let rev: Vec<(String, Vec<String>)> = orders
            .into_iter()
            .map(|(v, mut seq)| {
                seq.reverse();
                (v, seq)
            })
            .collect();
        let mirror = BrauerTree::new("r", t.multiplicity(), vs, es, rev).unwrap();
        let flags = IsoFlags { reversed: true, ..IsoFlags::exact() };
        prop_assert!(planar_iso(&t, &mirror, &flags).is_some());
    }

    #[test]
    fn fold_then_quotient(seed in any::<u64>(), edges in 1usize..6, m in 2u32..=12) {
        let t = tree(seed, edges, m);
        for d in (2..=m).filter(|d| m % d == 0) {
            let f = fold(&t, d).unwrap();
            prop_assert_eq!(f.num_edges(), t.num_edges() * d as usize);
            let q = quotient(&f, d).unwrap();
            prop_assert!(planar_iso(&q, &t, &IsoFlags::exact()).is_some());
            let sigma = fold_automorphism(&f, d).unwrap();
            prop_assert_eq!(order_of(&sigma), d as usize);
        }
    }

    #[test]
    fn polynomial_arithmetic(p in poly(), q in poly(), x in -6i64..=6) {
        let x = BigInt::from(x);
        prop_assert_eq!((&p * &q).eval(&x), p.eval(&x) * q.eval(&x));
        prop_assert_eq!((&p - &q).eval(&x), p.eval(&x) - q.eval(&x));
        // Integer division needs a monic divisor; q has degree below 7.
        let monic = &QPoly::monomial(1, 7) + &q;
        let (quo, rem) = p.div_rem(&monic).unwrap();
        prop_assert_eq!(&(&quo * &monic) + &rem, p.clone());
        prop_assert!(rem.degree().is_none_or(|d| d < 7));
        let s = p.to_string();
        prop_assert_eq!(s.parse::<QPoly>().unwrap(), p);
    }

    #[test]
    fn congruence_is_an_equivalence(p in poly(), q in poly(), r in poly(), d in 1u32..30) {
        prop_assert!(congruent_mod_phi(&p, &p, d).unwrap());
        prop_assert_eq!(congruent_mod_phi(&p, &q, d).unwrap(), congruent_mod_phi(&q, &p, d).unwrap());
        if congruent_mod_phi(&p, &q, d).unwrap() && congruent_mod_phi(&q, &r, d).unwrap() {
            prop_assert!(congruent_mod_phi(&p, &r, d).unwrap());
        }
        let shifted = &p + &(&cyclotomic(d).unwrap() * &q);
        prop_assert!(congruent_mod_phi(&p, &shifted, d).unwrap());
    }

    #[test]
    fn certificates_round_trip(
        path in prop::collection::vec("[A-Z][a-z0-9_]{0,4}", 1..6),
        shift in -20i64..20,
        corollary in any::<bool>(),
        m in prop::option::of(1u32..10),
    ) {
        let mut text = format!("CERT c kind=coxeter tree=t{}\nPATH {}\nSHIFT {shift}\n",
            m.map(|m| format!(" m={m}")).unwrap_or_default(), path.join(" "));
        if corollary {
            text += "COROLLARY\n";
        }
        let c = Certificate::parse(&text).unwrap();
        prop_assert_eq!(Certificate::parse(&c.to_text()).unwrap(), c);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn cartan_and_dimension(seed in any::<u64>(), edges in 1usize..8, m in 1u32..=3) {
        let t = tree(seed, edges, m);
        prop_assume!(!(edges == 1 && m == 1));
        let a = TreeAlgebra::new(&t, m).unwrap();
        let e = t.num_edges() as u32;
        prop_assert_eq!(cartan_det(&a), BigInt::from(e * m + 1));
        let c = cartan(&a);
        let total: i64 = c.iter().flatten().sum();
        prop_assert_eq!(total as usize, a.dim());
        let projectives: usize = a.projectives().iter().map(|p| p.dim()).sum();
        prop_assert_eq!(projectives, a.dim());
    }

    #[test]
    fn syzygies_are_periodic(seed in any::<u64>(), edges in 1usize..6, m in 1u32..=2) {
        let t = tree(seed, edges, m);
        prop_assume!(!(edges == 1 && m == 1));
        let a = TreeAlgebra::new(&t, m).unwrap();
        let period = 2 * t.num_edges();
        for s in 0..t.num_edges() {
            let simple = a.simple(s);
            let mut cur = simple.clone();
            for k in 1..=period {
                cur = cur.syzygy(&a);
                if k < period {
                    prop_assert!(cur.dim() > 0);
                }
            }
            prop_assert!(cur.is_isomorphic(&a, &simple), "Omega^{period}(S{s}) is not S{s}");
        }
    }

    #[test]
    fn ext1_rule_matches_the_syzygy(seed in any::<u64>(), edges in 1usize..8, m in 1u32..=3) {
        let t = tree(seed, edges, m);
        prop_assume!(!(edges == 1 && m == 1));
        let a = TreeAlgebra::new(&t, m).unwrap();
        for s in 0..t.num_edges() {
            let head = a.simple(s).syzygy(&a).head(&a);
            for u in 0..t.num_edges() {
                let count = head.iter().filter(|&&h| h == u).count();
                prop_assert_eq!(usize::from(a.ext1(s, u)), count, "Ext^1(S{}, S{})", s, u);
            }
        }
    }

    #[test]
    fn walk_characters_have_period_2e(seed in any::<u64>(), edges in 1usize..7, m in 1u32..=3, n in -10i64..10) {
        let t = tree(seed, edges, m);
        prop_assume!(!(edges == 1 && m == 1));
        let a = TreeAlgebra::new(&t, m).unwrap();
        let p = 2 * t.num_edges() as i64;
        for v in leaves(&t).into_iter().filter(|&v| t.exceptional() != Some(v)) {
            let w = walk(&a, v, n).unwrap();
            prop_assert_eq!(&walk(&a, v, n + p).unwrap().character, &w.character);
            // A syzygy's character is that of a lattice: one vertex, or a
            // projective minus one.
            let total: i64 = w.character.coeffs().iter().sum();
            prop_assert_eq!(total, 1);
        }
    }

    #[test]
    fn failing_verdicts_carry_witnesses(seed in any::<u64>(), edges in 2usize..7, n in 0i64..12, pick in any::<prop::sample::Index>()) {
        let t = tree(seed, edges, 2);
        let starts: Vec<usize> = leaves(&t).into_iter().filter(|&v| t.exceptional() != Some(v)).collect();
        prop_assume!(!starts.is_empty());
        let start = &t.vertex(starts[0]).label;
        let expect = &t.vertex(pick.index(t.num_vertices())).label;
        let cert = Certificate::parse(&format!(
            "CERT w kind=walk tree=r\nSTART {start}\nN {n}\nEXPECT {expect}\n"
        )).unwrap();
        let v1 = check(&cert, &t, &NoEnv);
        let v2 = check(&cert, &t, &NoEnv);
        prop_assert_eq!(&v1, &v2);
        if v1.is_fail() {
            prop_assert!(v1.witness.as_deref().is_some_and(|w| !w.is_empty()));
        } else {
            prop_assert!(v1.witness.is_none());
        }
        for kind in ["hecke", "real-stem", "steinberg"] {
            let c = Certificate::parse(&format!("CERT s kind={kind} tree=r\n")).unwrap();
            let v = check(&c, &t, &NoEnv);
            prop_assert_eq!(v.is_fail(), v.witness.is_some());
        }
    }
}
