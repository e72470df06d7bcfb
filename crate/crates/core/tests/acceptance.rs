//! Acceptance suite: one test per release criterion, each ending in a single
//! PASS line. Every check is exact; random data comes from fixed seeds.

use std::collections::BTreeSet;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wlskit_core::abelian::{
    minkowski_bound, verify_square_bounds, ExponentValue, Morphism, Presentation, SquareMode,
    Subgroup,
};
use wlskit_core::complexes::models::{hopf_model, two_circles_model};
use wlskit_core::complexes::{
    degeneracy_bound, degenerates_at_e2_q, spectral_pages, verify_convergence,
    verify_page_consistency, verify_tensoring_q, CochainComplex, FilteredComplex,
};
use wlskit_core::matrix::IntMatrix;
use wlskit_core::rational::QMatrix;
use wlskit_core::rings::models::{cp, s1_s3, t2_rescaled, torus};
use wlskit_core::rings::{
    betti_report, c3, delta_d, discsym_bound, is_wls_class, product_ring, tau, wls_sum_check,
    GradedRing,
};
use wlskit_core::roots::{find_root_bruteforce, finite_order, verify_root_binomial, OrderResult};

fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

fn q(x: i64) -> BigRational {
    BigRational::from_integer(big(x))
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    let entries = (0..rows * cols).map(|_| big(rng.gen_range(-bound..=bound))).collect();
    IntMatrix::new(rows, cols, entries).expect("shape matches")
}

fn random_full_rank(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> IntMatrix {
    loop {
        let m = random_matrix(rng, n, n, bound);
        if !m.det().is_zero() {
            return m;
        }
    }
}

#[test]
fn criterion_01_snf_suite() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..1000 {
        let rows = rng.gen_range(1..=6);
        let cols = rng.gen_range(1..=6);
        let m = random_matrix(&mut rng, rows, cols, 20);
        let snf = m.smith_normal_form();
        assert_eq!(&(&snf.u * &m) * &snf.v, snf.d, "U M V = D");
        assert!(snf.u.is_unimodular() && snf.v.is_unimodular());
        let diag = snf.diagonal();
        for w in diag.windows(2) {
            assert!(!w[0].is_negative());
            if !w[0].is_zero() {
                assert!((&w[1] % &w[0]).is_zero(), "divisibility chain");
            } else {
                assert!(w[1].is_zero());
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 10, "took {elapsed:?}");
    println!("criterion 01: PASS — SNF postconditions on 1000 random matrices ({elapsed:?})");
}

/// A random finite group, a random subgroup, and the quotient: the exact
/// sequence 0 -> M' -> M -> M'' -> 0.
fn random_finite_with_subgroup(
    rng: &mut ChaCha8Rng,
) -> (Presentation, Subgroup, Presentation) {
    let k = rng.gen_range(1..=3);
    let invariants: Vec<i64> = (0..k).map(|_| rng.gen_range(2..=12)).collect();
    let m = Presentation::from_invariants(&invariants, 0);
    let gens: Vec<Vec<BigInt>> = (0..rng.gen_range(1..=3))
        .map(|_| (0..m.generators()).map(|_| big(rng.gen_range(-6..=6))).collect())
        .collect();
    let sub = Subgroup::new(m.clone(), gens).expect("ambient ranks match");
    let quotient = sub.quotient().0;
    (m, sub, quotient)
}

#[test]
fn criterion_02_exponent_calculus() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    // exact sequences: exp M <= exp M' * exp M''
    for _ in 0..500 {
        let (m, sub, quotient) = random_finite_with_subgroup(&mut rng);
        let exp_m = m.exponent().expect_finite("exp M").unwrap();
        let exp_sub = sub.presentation().0.exponent().expect_finite("exp M'").unwrap();
        let exp_q = quotient.exponent().expect_finite("exp M''").unwrap();
        assert!(exp_m <= &exp_sub * &exp_q, "exp M <= exp M' exp M''");
        // chain form: A <= B <= C with A = 0 degenerates to the same bound,
        // so use B = sub inside C = full group and A = a subgroup of B
        let inner: Vec<Vec<BigInt>> = sub
            .generators()
            .iter()
            .map(|g| {
                let c = big(rng.gen_range(1..=4));
                g.iter().map(|x| x * &c).collect()
            })
            .collect();
        let a = Subgroup::new(m.clone(), inner).unwrap();
        let c_mod_a = a.quotient().0.exponent().expect_finite("exp C/A").unwrap();
        // exp(B/A) from the quotient of B's presentation by A's expression in it
        let exprs: Vec<Vec<BigInt>> =
            a.generators().iter().map(|g| sub.express(g).unwrap()).collect();
        let bp = sub.presentation().0;
        let a_in_b = Subgroup::new(bp, exprs).unwrap();
        let b_mod_a = a_in_b.quotient().0.exponent().expect_finite("exp B/A").unwrap();
        let c_mod_b = quotient.exponent().expect_finite("exp C/B").unwrap();
        assert!(c_mod_a <= &b_mod_a * &c_mod_b, "exp C/A <= exp B/A exp C/B");
    }
    // exp(f_Z) <= exp f for morphisms with finite exponent
    for _ in 0..500 {
        let n = rng.gen_range(1..=3);
        let torsion: Vec<i64> = (0..rng.gen_range(0..=2)).map(|_| rng.gen_range(2..=8)).collect();
        let target = Presentation::from_invariants(&torsion, n);
        let source = Presentation::free(n);
        // free columns that hit a finite-index sublattice, plus arbitrary noise
        // into the torsion coordinates
        let free_block = random_full_rank(&mut rng, n, 4);
        let mut matrix = IntMatrix::zero(target.generators(), n);
        for j in 0..n {
            for (i, ti) in torsion.iter().enumerate() {
                matrix.set(i, j, big(rng.gen_range(0..*ti)));
            }
            for i in 0..n {
                matrix.set(torsion.len() + i, j, free_block.get(i, j).clone());
            }
        }
        let f = Morphism::new(source, target, matrix).unwrap();
        let exp_f = f.exponent().expect_finite("exp f").unwrap();
        let exp_fz = f.lattice_part().exponent().expect_finite("exp f_Z").unwrap();
        assert!(exp_fz <= exp_f, "exp f_Z <= exp f");
    }
    // commutative squares, all three modes
    for i in 0..500 {
        let n = rng.gen_range(1..=3);
        let zn = Presentation::free(n);
        let fp_mat = random_full_rank(&mut rng, n, 3);
        let f_prime = Morphism::new(zn.clone(), zn.clone(), fp_mat.clone()).unwrap();
        match i % 3 {
            0 => {
                // image equality: h = scalar * Id, f = f' k, g = scalar * k
                let scalar = big(rng.gen_range(1..=5));
                let k = random_full_rank(&mut rng, n, 3);
                let f = Morphism::new(zn.clone(), zn.clone(), &fp_mat * &k).unwrap();
                let g = Morphism::new(zn.clone(), zn.clone(), k.scale(&scalar)).unwrap();
                let h = Morphism::scalar(&zn, &scalar);
                let rep =
                    verify_square_bounds(&f, &f_prime, &g, &h, SquareMode::ImageEquality, &scalar)
                        .unwrap();
                assert!(rep.all_hold(), "image-equality bounds");
            }
            1 => {
                // image containment: g = scalar * s f, h = scalar * f' s
                let scalar = big(rng.gen_range(1..=5));
                let f_mat = random_full_rank(&mut rng, n, 3);
                let f = Morphism::new(zn.clone(), zn.clone(), f_mat.clone()).unwrap();
                let s = random_matrix(&mut rng, n, n, 3);
                let g =
                    Morphism::new(zn.clone(), zn.clone(), (&s * &f_mat).scale(&scalar)).unwrap();
                let h =
                    Morphism::new(zn.clone(), zn.clone(), (&fp_mat * &s).scale(&scalar)).unwrap();
                let rep = verify_square_bounds(
                    &f,
                    &f_prime,
                    &g,
                    &h,
                    SquareMode::ImageContainment,
                    &scalar,
                )
                .unwrap();
                assert!(rep.all_hold(), "image-containment bound");
            }
            _ => {
                // exponent product: h = f' r, g = r f
                let f_mat = random_full_rank(&mut rng, n, 3);
                let f = Morphism::new(zn.clone(), zn.clone(), f_mat.clone()).unwrap();
                let r = random_full_rank(&mut rng, n, 3);
                let g = Morphism::new(zn.clone(), zn.clone(), &r * &f_mat).unwrap();
                let h = Morphism::new(zn.clone(), zn.clone(), &fp_mat * &r).unwrap();
                let rep = verify_square_bounds(
                    &f,
                    &f_prime,
                    &g,
                    &h,
                    SquareMode::ExponentProduct,
                    &BigInt::one(),
                )
                .unwrap();
                assert!(rep.all_hold(), "exponent-product bound");
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 30, "took {elapsed:?}");
    println!("criterion 02: PASS — exponent lemmas on 500 sequences and 500 squares ({elapsed:?})");
}

/// A random filtered complex of free groups: differentials compose to zero
/// by construction (each is built from the kernel of the previous transpose),
/// and the filtration is closed under d by propagation.
fn random_filtered_complex(rng: &mut ChaCha8Rng) -> FilteredComplex {
    let len = rng.gen_range(2..=4);
    let dims: Vec<usize> = (0..len).map(|_| rng.gen_range(1..=4)).collect();
    let groups: Vec<Presentation> = dims.iter().map(|&d| Presentation::free(d)).collect();
    let mut mats: Vec<IntMatrix> = Vec::new();
    for i in 0..len - 1 {
        let m = if i == 0 {
            random_matrix(rng, dims[1], dims[0], 2)
        } else {
            // rows orthogonal to the columns of the previous differential
            let prev = &mats[i - 1];
            let kernel = prev.transpose().kernel();
            let mut m = IntMatrix::zero(dims[i + 1], dims[i]);
            for r in 0..dims[i + 1] {
                for k in &kernel {
                    let c = big(rng.gen_range(-2..=2));
                    for (col, kv) in k.iter().enumerate() {
                        m.set(r, col, m.get(r, col) + &c * kv);
                    }
                }
            }
            m
        };
        mats.push(m);
    }
    let differentials: Vec<Morphism> = mats
        .iter()
        .enumerate()
        .map(|(i, m)| Morphism::new(groups[i].clone(), groups[i + 1].clone(), m.clone()).unwrap())
        .collect();
    let complex = CochainComplex::new(0, groups.clone(), differentials.clone()).unwrap();
    let level = rng.gen_range(1..=3usize);
    // generator sets per (p, degree), decreasing in p and closed under d
    let mut gens: Vec<Vec<Vec<Vec<BigInt>>>> = vec![vec![vec![]; len]; level + 1];
    for p in (1..=level).rev() {
        let mut current = gens[p.min(level)].clone();
        if p < level {
            current = gens[p + 1].clone();
        }
        for (k, dim) in dims.iter().enumerate() {
            for _ in 0..rng.gen_range(0..=2) {
                current[k].push((0..*dim).map(|_| big(rng.gen_range(-2..=2))).collect());
            }
        }
        // close under the differential, cascading upward in degree
        for k in 0..len - 1 {
            let imgs: Vec<Vec<BigInt>> =
                current[k].iter().map(|v| mats[k].mul_vec(v)).collect();
            current[k + 1].extend(imgs);
        }
        gens[p] = current;
    }
    let filtration: Vec<Vec<Subgroup>> = (0..len)
        .map(|k| {
            (1..=level)
                .map(|p| Subgroup::new(groups[k].clone(), gens[p][k].clone()).unwrap())
                .collect()
        })
        .collect();
    FilteredComplex::new(complex, level, filtration).expect("construction is d-stable")
}

#[test]
fn criterion_03_spectral_engine() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for i in 0..500 {
        let fc = random_filtered_complex(&mut rng);
        let conv = verify_convergence(&fc).unwrap();
        assert!(conv.ok, "convergence fails on instance {i}: {:?}", conv.first_mismatch);
        let tens = verify_tensoring_q(&fc).unwrap();
        assert!(tens.ok, "tensoring fails on instance {i}: {:?}", tens.first_discrepancy);
        let pages = spectral_pages(&fc).unwrap();
        assert!(verify_page_consistency(&pages).unwrap(), "page recomputation, instance {i}");
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 60, "took {elapsed:?}");
    println!("criterion 03: PASS — convergence, tensoring, consistency on 500 complexes ({elapsed:?})");
}

#[test]
fn criterion_04_golden_fixtures() {
    let hopf = hopf_model();
    let pages = spectral_pages(&hopf).unwrap();
    let e2 = &pages[0];
    let d = &e2.entry(0, 1).expect("E_2^{0,1}").d;
    assert_eq!(d.source().canonical_form(), (1, vec![]));
    assert_eq!(d.target().canonical_form(), (1, vec![]));
    let kernel = Subgroup::kernel_of(d).presentation().0.canonical_form();
    let cokernel = d.image().quotient().0.canonical_form();
    assert_eq!(kernel, (0, vec![]), "d_2^{{0,1}} injective");
    assert_eq!(cokernel, (0, vec![]), "d_2^{{0,1}} surjective");
    assert!(!degenerates_at_e2_q(&hopf).unwrap());

    let circles = two_circles_model();
    assert!(degenerates_at_e2_q(&circles).unwrap());
    let e2 = &spectral_pages(&circles).unwrap()[0];
    let mut by_total = [0usize; 3];
    for e in e2.entries.values() {
        by_total[(e.p + e.q) as usize] += e.group.rank();
    }
    assert_eq!(by_total, [1, 2, 1], "E_2 Betti profile");
    println!("criterion 04: PASS — Hopf transgression and two-circles degeneration exact");
}

#[test]
fn criterion_05_torsion_differential_bounds() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..500 {
        let a = rng.gen_range(1..=3);
        let torsion: Vec<i64> = (0..rng.gen_range(1..=2)).map(|_| rng.gen_range(2..=9)).collect();
        let rank = rng.gen_range(0..=2);
        let g0 = Presentation::free(a);
        let g1 = Presentation::from_invariants(&torsion, rank);
        let g2 = Presentation::from_invariants(&[rng.gen_range(2..=6)], rng.gen_range(0..=1));
        // differential into the torsion generators only, so d tensor Q = 0
        let mut m = IntMatrix::zero(g1.generators(), a);
        for j in 0..a {
            for (i, ti) in torsion.iter().enumerate() {
                m.set(i, j, big(rng.gen_range(0..*ti)));
            }
        }
        let d0 = Morphism::new(g0.clone(), g1.clone(), m).unwrap();
        let d1 = Morphism::zero(&g1, &g2);
        let c = CochainComplex::new(0, vec![g0, g1, g2], vec![d0, d1]).unwrap();
        assert!(c.all_dq_zero());
        for rep in c.torsion_comparison().unwrap() {
            assert!(rep.holds, "exp Tor H^k <= exp Tor C^k at degree {}", rep.degree);
        }
        for k in 0..=1 {
            let inc = c.lattice_inclusion(k).unwrap();
            assert!(inc.holds, "exp iota <= exp Tor C^{} fails", k + 1);
        }
    }
    println!("criterion 05: PASS — torsion bounds on 500 rationally-zero differentials");
}

#[test]
fn criterion_06_degeneracy_bound() {
    let b = degeneracy_bound(&big(10), 1, 1, 2, &big(4), &big(2), &big(5)).unwrap();
    assert_eq!((b.lambda, b.mu, b.capital_lambda), (big(250), big(25), big(5)));
    assert!(b.lower_bound_ok);
    // grid: Lambda * (w * iota_high * iota_3) >= n^k throughout
    for n in 2i64..=11 {
        for ih in 1i64..=10 {
            for (i3, w) in [(1i64, 1i64), (2, 5), (3, 7)] {
                for k in 2u32..=4 {
                    let b = degeneracy_bound(&big(n), 1, 1, k, &big(ih), &big(i3), &big(w))
                        .unwrap();
                    assert!(b.lower_bound_ok);
                    assert!(
                        b.capital_lambda * big(w * ih * i3) >= big(n).pow(k),
                        "chain bound at n={n} ih={ih} i3={i3} w={w} k={k}"
                    );
                }
            }
        }
    }
    println!("criterion 06: PASS — (250, 25, 5) triple and the grid lower bound");
}

#[test]
fn criterion_07_gl2_census() {
    let start = Instant::now();
    let cap = minkowski_bound(2);
    assert_eq!(cap, big(24));
    let mut realized = BTreeSet::new();
    let mut census = 0usize;
    let mut entries = [-3i64; 4];
    loop {
        let m = IntMatrix::from_rows(&[&entries[0..2], &entries[2..4]]);
        if m.is_unimodular() {
            census += 1;
            // oracle: direct power iteration up to the Minkowski bound
            let mut oracle = None;
            let mut power = m.clone();
            for j in 1..=24u64 {
                if power == IntMatrix::identity(2) {
                    oracle = Some(j);
                    break;
                }
                power = &power * &m;
            }
            match finite_order(&m).unwrap() {
                OrderResult::Finite(e) => {
                    assert_eq!(oracle, Some(e), "order mismatch for {entries:?}");
                    realized.insert(e);
                }
                OrderResult::Infinite(_) => {
                    assert_eq!(oracle, None, "oracle found an order for {entries:?}");
                }
            }
        }
        let mut i = 4;
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            if entries[i] < 3 {
                entries[i] += 1;
                for e in entries[i + 1..].iter_mut() {
                    *e = -3;
                }
                break;
            }
        }
        if entries == [-3; 4] || i == 0 && entries[0] == 3 {
            break;
        }
    }
    assert!(census > 0);
    assert_eq!(realized, BTreeSet::from([1u64, 2, 3, 4, 6]));
    let rot = IntMatrix::from_rows(&[&[0, -1], &[1, 0]]);
    assert_eq!(find_root_bruteforce(&rot, 2, 3, 100_000_000).unwrap(), None);
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 60, "took {elapsed:?}");
    println!("criterion 07: PASS — GL(2,Z) census orders {{1,2,3,4,6}}, oracle agreement, no root ({elapsed:?})");
}

#[test]
fn criterion_08_root_binomial() {
    for a in -3i64..=3 {
        let b = IntMatrix::from_rows(&[&[1, a], &[0, 1]]);
        for s in 2..=10 {
            assert!(verify_root_binomial(&b, s).unwrap().all_hold(), "2x2 a={a} s={s}");
        }
    }
    for a in -3i64..=3 {
        for b2 in -3i64..=3 {
            for c in -3i64..=3 {
                let b = IntMatrix::from_rows(&[&[1, a, b2], &[0, 1, c], &[0, 0, 1]]);
                for s in 2..=10 {
                    assert!(
                        verify_root_binomial(&b, s).unwrap().all_hold(),
                        "3x3 ({a},{b2},{c}) s={s}"
                    );
                }
            }
        }
    }
    println!("criterion 08: PASS — binomial identities on all unitriangular boxes, s in 2..=10");
}

/// Apply a random invertible rational change of basis in every degree; this
/// preserves validity and duality.
fn random_rebase(ring: &GradedRing, rng: &mut ChaCha8Rng) -> GradedRing {
    let n = ring.top_degree();
    let mut changes: Vec<QMatrix> = Vec::with_capacity(n + 1);
    for d in 0..=n {
        let k = ring.dim(d);
        let m = loop {
            let mut m = QMatrix::zero(k, k);
            for i in 0..k {
                for j in 0..k {
                    m.set(i, j, q(rng.gen_range(-2..=2)));
                }
            }
            if m.rank() == k {
                break m;
            }
        };
        changes.push(m);
    }
    // keep the unit normalized so degree 0 still holds the identity
    changes[0] = QMatrix::identity(1);
    let dims: Vec<usize> = (0..=n).map(|d| ring.dim(d)).collect();
    GradedRing::build(&dims, |d1, i, d2, j| {
        let a = changes[d1].column(i);
        let b = changes[d2].column(j);
        let prod = ring.multiply(d1, &a, d2, &b);
        if prod.is_empty() {
            vec![]
        } else {
            changes[d1 + d2].solve(&prod).expect("change of basis is invertible")
        }
    })
    .expect("rebased ring is well formed")
}

fn random_pd_ring(rng: &mut ChaCha8Rng) -> GradedRing {
    let blocks: [GradedRing; 5] = [torus(1), torus(2), cp(1), cp(2), s1_s3()];
    let a = &blocks[rng.gen_range(0..blocks.len())];
    let b = &blocks[rng.gen_range(0..blocks.len())];
    let p = product_ring(a, b).expect("product of valid rings").ring;
    random_rebase(&p, rng)
}

#[test]
fn criterion_09_wls_suite() {
    // fixed verdicts with sound witnesses
    let verdict = is_wls_class(&cp(2), &[q(1)]).unwrap();
    assert!(verdict.is_wls && verdict.w1_witness.is_some());
    for n in 1..=4 {
        let t = torus(n);
        let verdict = is_wls_class(&t, &t.zero(2)).unwrap();
        assert!(verdict.is_wls, "T^{n}");
        if let Some(w) = &verdict.w1_witness {
            // the witness really is a nonzero product
            let (_, prod) = t.one_class_product(&w.classes);
            assert!(prod.iter().any(|x| !x.is_zero()));
        }
    }
    let verdict = is_wls_class(&s1_s3(), &[]).unwrap();
    assert!(!verdict.is_wls);
    assert_eq!(verdict.w2_witness, Some(vec![q(1)]));

    // duality criterion equivalence: is_wls_class asserts internally that
    // the witness conditions match the surjectivity reformulation whenever
    // duality holds, so it must never error on a duality ring
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for i in 0..200 {
        let ring = random_pd_ring(&mut rng);
        assert!(ring.poincare_duality(), "instance {i} lost duality");
        let omega: Vec<BigRational> =
            (0..ring.dim(2)).map(|_| q(rng.gen_range(-3..=3))).collect();
        let verdict = is_wls_class(&ring, &omega)
            .unwrap_or_else(|e| panic!("criterion disagreement on instance {i}: {e}"));
        assert!(verdict.pd_criterion.is_some());
    }

    // product formula with the exact factorial coefficient
    let t = torus(2);
    assert!(wls_sum_check(&t, &t.zero(2), &t, &t.zero(2)).unwrap().all_hold());
    let c1 = cp(1);
    let rep = wls_sum_check(&c1, &[q(1)], &c1, &[q(1)]).unwrap();
    assert!(rep.all_hold());
    assert!(rep.samples.iter().any(|s| s.t1 == 1 && s.t2 == 1));

    // tau additivity on 100 random pairs
    let blocks: [GradedRing; 5] = [torus(1), torus(2), cp(1), cp(2), s1_s3()];
    for _ in 0..100 {
        let a = &blocks[rng.gen_range(0..blocks.len())];
        let b = &blocks[rng.gen_range(0..blocks.len())];
        let p = product_ring(a, b).unwrap();
        assert_eq!(tau(&p.ring).tau, tau(a).tau + tau(b).tau);
    }
    println!("criterion 09: PASS — WLS verdicts, duality equivalence, product formula, tau additivity");
}

#[test]
fn criterion_10_invariant_values() {
    for n in 1..=4usize {
        let t = torus(n);
        let zero = vec![BigInt::zero(); t.dim(2)];
        assert_eq!(
            delta_d(&t, &zero, n - 1).unwrap(),
            ExponentValue::Finite(BigInt::one()),
            "delta_{} T^{n}",
            n - 1
        );
        assert_eq!(delta_d(&t, &zero, n).unwrap(), ExponentValue::Finite(BigInt::one()));
        assert_eq!(c3(&t, &zero).unwrap(), BigInt::one());
        assert_eq!(discsym_bound(n, tau(&t).tau), n, "discsym T^{n}");
    }
    let r = cp(2);
    let lam = vec![BigInt::one()];
    assert_eq!(delta_d(&r, &lam, 3).unwrap(), ExponentValue::Finite(BigInt::one()));
    assert_eq!(delta_d(&r, &lam, 4).unwrap(), ExponentValue::Finite(BigInt::one()));
    assert_eq!(c3(&r, &lam).unwrap(), BigInt::one());
    assert_eq!(discsym_bound(4, tau(&r).tau), 2);

    let fixtures: Vec<GradedRing> = vec![
        torus(1),
        torus(2),
        torus(3),
        torus(4),
        cp(1),
        cp(2),
        cp(3),
        s1_s3(),
        t2_rescaled(),
        product_ring(&torus(2), &cp(1)).unwrap().ring,
    ];
    for ring in &fixtures {
        assert!(betti_report(ring).unwrap().sum_bound_holds, "sum of Betti >= 2^tau");
    }
    println!("criterion 10: PASS — defect, constant, and symmetry-bound values on all fixtures");
}
