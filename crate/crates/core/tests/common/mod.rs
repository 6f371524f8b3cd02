//! Shared fixtures and random generators for the integration tests.
#![allow(dead_code)]

use clusterlab::positivity::{generator_product, snake_quiver, Generator, RationalMatrix, WiringDiagram};
use clusterlab::surface::{all_curves, LamCurve, Lamination, MultiLamination, Triangulation};
use clusterlab::{LaurentPoly, Seed};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Numerator in `[-9, 9]`, denominator in `[1, 4]`.
pub fn small_rational(r: &mut impl Rng) -> BigRational {
    BigRational::new(r.gen_range(-9i64..=9).into(), r.gen_range(1i64..=4).into())
}

pub fn positive_rational(r: &mut impl Rng) -> BigRational {
    BigRational::new(r.gen_range(1i64..=9).into(), r.gen_range(1i64..=4).into())
}

pub fn random_matrix(r: &mut impl Rng, n: usize) -> RationalMatrix {
    let rows = (0..n).map(|_| (0..n).map(|_| small_rational(r)).collect()).collect();
    RationalMatrix::from_rows(rows).unwrap()
}

/// Random matrix rescaled along its first row to determinant 1.
pub fn random_det_one(r: &mut impl Rng, n: usize) -> RationalMatrix {
    loop {
        let mut m = random_matrix(r, n);
        let det = m.det();
        if det.is_zero() {
            continue;
        }
        for j in 0..n {
            let v = m.get(0, j) / &det;
            m.set(0, j, v);
        }
        assert!(m.det().is_one());
        return m;
    }
}

/// Elementary matrix `I + t E_{row, col}` (zero-based), any sign of `t`.
pub fn elementary(n: usize, row: usize, col: usize, t: BigRational) -> RationalMatrix {
    let mut m = RationalMatrix::identity(n);
    m.set(row, col, t);
    m
}

/// Splits a variable name such as `D134` into the index set `[1, 3, 4]`.
pub fn index_set(name: &str) -> Vec<usize> {
    let digits = name.trim_start_matches('D');
    if digits.contains('_') {
        digits.split('_').map(|d| d.parse().unwrap()).collect()
    } else {
        digits.chars().map(|c| c.to_digit(10).unwrap() as usize).collect()
    }
}

/// The SL4/N seed: the snake quiver with every chamber minor as a formal
/// variable named after its chamber.
pub fn sl4_seed() -> Seed {
    Seed::initial(&snake_quiver(4))
}

/// Values of the seed variables at the flag minors of `m`.
pub fn minor_point(seed: &Seed, m: &RationalMatrix) -> Vec<BigRational> {
    seed.vars().names().iter().map(|name| m.flag_minor(&index_set(name)).unwrap()).collect()
}

pub fn poly(seed: &Seed, text: &str) -> LaurentPoly {
    LaurentPoly::parse(seed.vars(), text).unwrap()
}

/// Greedily adds random curve types that avoid the ones already chosen.
pub fn random_lamination(r: &mut impl Rng, n: usize, max_types: usize, max_mult: u32) -> Lamination {
    let mut curves = all_curves(n);
    curves.shuffle(r);
    let mut chosen: Vec<(LamCurve, u32)> = Vec::new();
    let want = r.gen_range(0..=max_types);
    for c in curves {
        if chosen.len() >= want {
            break;
        }
        if chosen.iter().all(|(d, _)| !d.crosses(&c)) {
            chosen.push((c, r.gen_range(1..=max_mult)));
        }
    }
    Lamination::new(n, chosen.into_iter().map(|(c, m)| (c.a, c.b, m))).unwrap()
}

pub fn random_multi_lamination(r: &mut impl Rng, n: usize, count: usize) -> MultiLamination {
    let ls = (0..count).map(|_| random_lamination(r, n, 3, 2)).collect();
    MultiLamination::new(n, ls).unwrap()
}

/// The hexagon of the SL4/N correspondence: triangulation `{2-4, 2-6, 4-6}`
/// and six single-curve laminations named after the frozen chamber minors.
pub fn hexagon_fixture() -> (Triangulation, MultiLamination) {
    let t = Triangulation::from_pairs(6, &[(4, 6), (2, 6), (2, 4)]).unwrap();
    let entries = [
        ("D4", (1, 5)),
        ("D1", (4, 6)),
        ("D123", (1, 3)),
        ("D234", (2, 4)),
        ("D34", (3, 6)),
        ("D12", (2, 5)),
    ]
    .iter()
    .map(|(name, (a, b))| (name.to_string(), Lamination::single(6, *a, *b).unwrap()))
    .collect();
    (t, MultiLamination::named(6, entries).unwrap())
}

/// Chamber names of the diagonals of the hexagon under the same labelling.
pub fn hexagon_diagonal_name(d: (usize, usize)) -> &'static str {
    match d {
        (4, 6) => "D2",
        (2, 6) => "D3",
        (2, 4) => "D23",
        (3, 5) => "D134",
        (1, 3) => "D124",
        (1, 5) => "D14",
        (1, 4) => "D24",
        (2, 5) => "D13",
        (3, 6) => "Omega",
        _ => unreachable!("{d:?} is not a hexagon diagonal"),
    }
}

/// Rank of a matrix of residues modulo `p` by Gaussian elimination.
pub fn rank_mod_p(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % p as u128) as u64;
    let pow = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        acc
    };
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(rank, pivot);
        let inv = pow(rows[rank][c], p - 2);
        for x in rows[rank].iter_mut() {
            *x = mul(*x, inv);
        }
        let pivot_row = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && row[c] != 0 {
                let f = row[c];
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x + p - mul(f, *y)) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// A rational reduced modulo `p`; the denominator must be a unit.
pub fn residue(x: &BigRational, p: u64) -> u64 {
    let pb = BigInt::from(p);
    let reduce = |v: &BigInt| -> u64 {
        let r = ((v % &pb) + &pb) % &pb;
        u64::try_from(r).unwrap()
    };
    let n = reduce(x.numer());
    let d = reduce(x.denom());
    assert_ne!(d, 0, "denominator divisible by p");
    let d_inv = BigInt::from(d).modpow(&BigInt::from(p - 2), &pb);
    let prod = (BigInt::from(n) * d_inv) % &pb;
    u64::try_from(prod).unwrap()
}

pub fn one() -> BigRational {
    BigRational::one()
}

/// Encodes a simple graph as a quiver (nodes mutable, one frozen vertex per
/// edge, arrows node -> edge) so that canonical forms decide isomorphism.
pub fn graph_as_quiver(nodes: usize, edges: &[(usize, usize)]) -> clusterlab::Quiver {
    use clusterlab::{Quiver, Vertex};
    let mut vertices: Vec<Vertex> = (0..nodes).map(|i| Vertex::mutable(format!("v{i}"))).collect();
    vertices.extend((0..edges.len()).map(|k| Vertex::frozen(format!("e{k}"))));
    let arrows = edges.iter().enumerate().flat_map(|(k, &(a, b))| {
        [(format!("v{a}"), format!("e{k}"), 1), (format!("v{b}"), format!("e{k}"), 1)]
    });
    Quiver::new(vertices, arrows).unwrap()
}

pub fn isomorphic_graphs(n1: usize, e1: &[(usize, usize)], n2: usize, e2: &[(usize, usize)]) -> bool {
    use clusterlab::quiver::canonical_form;
    n1 == n2
        && e1.len() == e2.len()
        && canonical_form(&graph_as_quiver(n1, e1)).key == canonical_form(&graph_as_quiver(n2, e2)).key
}

pub fn unipotent3(x: &BigRational, y: &BigRational, z: &BigRational) -> RationalMatrix {
    let zero = BigRational::zero();
    RationalMatrix::from_rows(vec![
        vec![one(), x.clone(), y.clone()],
        vec![zero.clone(), one(), z.clone()],
        vec![zero.clone(), zero, one()],
    ])
    .unwrap()
}

pub fn random_ldu(r: &mut impl Rng, n: usize) -> RationalMatrix {
    let mut gens = Vec::new();
    for _ in 0..r.gen_range(0..=8) {
        gens.push(Generator::Lower(r.gen_range(1..n), positive_rational(r)));
    }
    let mut d: Vec<BigRational> = (0..n - 1).map(|_| positive_rational(r)).collect();
    let prod = d.iter().fold(one(), |a, b| a * b);
    d.push(one() / prod);
    gens.push(Generator::Diagonal(d));
    for _ in 0..r.gen_range(0..=8) {
        gens.push(Generator::Upper(r.gen_range(1..n), positive_rational(r)));
    }
    generator_product(n, &gens).unwrap()
}

/// Lower unipotent factor along a reduced word with parameters of random
/// sign, times an upper triangular factor with positive diagonal. Flag
/// minors only see the lower factor (up to a positive scalar), so roughly
/// a fixed fraction of these pass the chamber test without being totally
/// positive.
pub fn chamber_candidate(r: &mut impl Rng, n: usize) -> RationalMatrix {
    let w = WiringDiagram::snake(n);
    let mut m = RationalMatrix::identity(n);
    for &i in w.word() {
        let t = if r.gen_bool(0.9) { positive_rational(r) } else { -positive_rational(r) };
        m = &m * &elementary(n, i, i - 1, t);
    }
    let mut u = RationalMatrix::identity(n);
    for i in 0..n {
        u.set(i, i, positive_rational(r));
        for j in i + 1..n {
            u.set(i, j, small_rational(r));
        }
    }
    &m * &u
}
