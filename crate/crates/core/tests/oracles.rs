//! Independent oracles checked against the library.

use functcat::endo::c_battery;
use functcat::funmod::{hom_modules, random_module, simple, FModule};
use functcat::homology::{
    ext, ext_via_injectives, injective_coresolution, pi_shriek_cohomology, pi_star_homology, projective_resolution,
    QuotientHomology, TraceContext, DEFAULT_SEED,
};
use functcat::instance::{fixture, load_instance, Instance, FIXTURES};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn inst(name: &str) -> Instance {
    load_instance(fixture(name).unwrap()).unwrap()
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Rank by plain Gaussian elimination on owned rows.
fn rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let piv = rows[r][c].clone();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone() / piv.clone();
                for j in c..cols {
                    let d = rows[r][j].clone() * f.clone();
                    rows[i][j] -= d;
                }
            }
        }
        r += 1;
    }
    r
}

fn entry(m: &FModule, a: usize, i: usize, j: usize) -> BigRational {
    m.action(a).get(i, j).clone()
}

/// `dim Hom(M, N)` as the nullity of the commutativity equations.
fn hom_dim_oracle(m: &FModule, n: &FModule) -> usize {
    let cat = m.category();
    let nv = cat.vertex_count();
    let mut offset = vec![0; nv + 1];
    for v in 0..nv {
        offset[v + 1] = offset[v] + n.dim(v) * m.dim(v);
    }
    let unknowns = offset[nv];
    let var = |v: usize, r: usize, c: usize| offset[v] + r * m.dim(v) + c;
    let mut rows = Vec::new();
    for (a, arrow) in cat.arrows().iter().enumerate() {
        let (s, t) = (arrow.source, arrow.target);
        // (N(a) φ_s)[r][c] - (φ_t M(a))[r][c] = 0
        for r in 0..n.dim(t) {
            for c in 0..m.dim(s) {
                let mut row = vec![BigRational::zero(); unknowns];
                for k in 0..n.dim(s) {
                    row[var(s, k, c)] += entry(n, a, r, k);
                }
                for k in 0..m.dim(t) {
                    row[var(t, r, k)] -= entry(m, a, k, c);
                }
                rows.push(row);
            }
        }
    }
    unknowns - rank(rows)
}

/// `dim M^T C^{-1} dim N`, with `C[x][y] = dim Hom(x, y)`.
fn euler_form(inst: &Instance, m: &FModule, n: &FModule) -> BigRational {
    let cat = &inst.category;
    let nv = cat.vertex_count();
    // Augmented system C y = dim N.
    let mut a: Vec<Vec<BigRational>> = (0..nv)
        .map(|x| {
            let mut row: Vec<BigRational> = (0..nv).map(|y| q(cat.hom_dim(x, y) as i64)).collect();
            row.push(q(n.dim(x) as i64));
            row
        })
        .collect();
    for c in 0..nv {
        let p = (c..nv).find(|&i| !a[i][c].is_zero()).expect("Cartan matrix is invertible");
        a.swap(c, p);
        let piv = a[c][c].clone();
        for j in 0..=nv {
            a[c][j] = a[c][j].clone() / piv.clone();
        }
        for i in 0..nv {
            if i != c && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..=nv {
                    let d = a[c][j].clone() * f.clone();
                    a[i][j] -= d;
                }
            }
        }
    }
    (0..nv).map(|x| q(m.dim(x) as i64) * a[x][nv].clone()).fold(BigRational::zero(), |s, t| s + t)
}

/// Number of quiver paths of length `k` from `i` to `j`.
fn path_count(inst: &Instance, i: usize, j: usize, k: usize) -> usize {
    let cat = &inst.category;
    let mut v = vec![0usize; cat.vertex_count()];
    v[i] = 1;
    for _ in 0..k {
        let mut w = vec![0usize; v.len()];
        for a in cat.arrows() {
            w[a.target] += v[a.source];
        }
        v = w;
    }
    v[j]
}

#[test]
fn hom_dimensions_match_oracle() {
    for (name, _) in FIXTURES {
        let inst = inst(name);
        let battery = c_battery(&inst.category, DEFAULT_SEED, 10);
        for x in &battery {
            for y in &battery {
                let h = hom_modules(&x.module, &y.module).unwrap();
                assert_eq!(h.dim(), hom_dim_oracle(&x.module, &y.module), "{name}: Hom({}, {})", x.name, y.name);
            }
        }
    }
}

#[test]
fn radical_square_zero_ext_counts_paths() {
    // For rad^2 = 0, Ext^k(S_i, S_j) counts paths of length k from i to j.
    for name in ["a2", "z6"] {
        let inst = inst(name);
        let cat = &inst.category;
        let n = cat.vertex_count();
        for i in 0..n {
            for j in 0..n {
                let dims = ext(&simple(cat, i), &simple(cat, j), 5).unwrap().dims;
                let want: Vec<usize> = (0..=5).map(|k| path_count(&inst, i, j, k)).collect();
                assert_eq!(dims, want, "{name}: Ext(S{i}, S{j})");
            }
        }
    }
}

#[test]
fn frozen_ext_values() {
    let z6 = inst("z6");
    let m = |s: &str| z6.module(s).unwrap();
    assert_eq!(ext(&m("S1"), &m("S4"), 3).unwrap().dims, [0, 0, 0, 1]);
    assert_eq!(ext(&m("S1"), &m("S6"), 5).unwrap().dims, [0, 0, 0, 0, 0, 1]);
    assert_eq!(ext(&m("M12"), &m("S1"), 3).unwrap().dims, [1, 0, 0, 0]);
    let aus = inst("aus_a2");
    let s = |v: &str| aus.module(v).unwrap();
    assert_eq!(ext(&s("Sa"), &s("Sc"), 3).unwrap().dims, [0, 0, 1, 0]);
    assert_eq!(ext(&s("Sa"), &s("Sb"), 3).unwrap().dims, [0, 1, 0, 0]);
}

#[test]
fn derived_functors_of_the_quotient() {
    // L_i π^* M and R^i π^! M, summed over vertices, against TOR and EXT with C/I.
    for (name, _) in FIXTURES {
        let inst = inst(name);
        let cat = &inst.category;
        for (bname, bundle) in &inst.bundles {
            let ctx = TraceContext::new(cat, bundle);
            let qh = QuotientHomology::new(&ctx.quotient, 3);
            for b in c_battery(cat, DEFAULT_SEED, 10) {
                let tor = qh.tor_table(&b.module).unwrap();
                let ext = qh.ext_table(&b.module).unwrap();
                let left = pi_star_homology(&ctx.quotient, &projective_resolution(&b.module, 4), 3).unwrap();
                let right = pi_shriek_cohomology(&ctx.quotient, &injective_coresolution(&b.module, 4), 3).unwrap();
                for i in 1..=3 {
                    assert_eq!(left[i - 1], tor[i].iter().sum::<usize>(), "{name}/{bname} {} L{i}", b.name);
                    assert_eq!(right[i - 1], ext[i].iter().sum::<usize>(), "{name}/{bname} {} R{i}", b.name);
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn euler_characteristic_matches_euler_form(fix in 0usize..4, seed in any::<u64>()) {
        let inst = inst(FIXTURES[fix].0);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_module(&inst.category, &mut rng);
        let n = random_module(&inst.category, &mut rng);
        let dims = ext(&m, &n, 6).unwrap().dims;
        let chi = dims.iter().enumerate().fold(BigRational::zero(), |s, (i, &d)| {
            if i % 2 == 0 { s + q(d as i64) } else { s - q(d as i64) }
        });
        prop_assert_eq!(chi, euler_form(&inst, &m, &n));
        prop_assert_eq!(dims[0], hom_dim_oracle(&m, &n));
    }

    #[test]
    fn ext_pipelines_agree(fix in 0usize..4, seed in any::<u64>()) {
        let inst = inst(FIXTURES[fix].0);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_module(&inst.category, &mut rng);
        let n = random_module(&inst.category, &mut rng);
        prop_assert_eq!(ext(&m, &n, 4).unwrap(), ext_via_injectives(&m, &n, 4).unwrap());
    }
}

#[test]
fn one_idempotent_ideals_square_to_themselves() {
    for (name, _) in FIXTURES {
        let inst = inst(name);
        for (bname, bundle) in &inst.bundles {
            let ctx = TraceContext::new(&inst.category, bundle);
            let rep = functcat::homology::idempotency_level(&ctx.quotient, 3, Some(&ctx), DEFAULT_SEED).unwrap();
            assert!(rep.level < 1 || rep.ideal_squares_to_itself, "{name}/{bname}");
        }
    }
}
