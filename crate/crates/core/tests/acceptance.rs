//! Acceptance checks, one line each. Runs without the libtest harness so the
//! report is always printed; exits non-zero when the set of failing
//! criteria differs from `EXPECTED_FAILURES`.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use clusterlab::positivity::{
    all_reduced_words, audit_transport, chamber_positivity_test, chevalley_product, is_totally_nonnegative,
    transport_quiver, verify_exchange_identity, RationalMatrix, WiringDiagram,
};
use clusterlab::quiver::catalog::{d_type, five_vertex_example, kronecker, markov, path};
use clusterlab::quiver::mutation_class;
use clusterlab::seed::{
    classify_quiver, cluster_complex, cluster_monomials, cluster_variables, enumerate_exchange_graph,
    laurent_check, TypeVerdict,
};
use clusterlab::surface::{
    flip_graph, inverse_shear, quiver_with_laminations, shear_vector, triangulations, verify_flip_mutation,
    MultiLamination, Triangulation,
};
use clusterlab::{Exec, Quiver, Seed, Vertex};
use common::*;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::Rng;

/// Criteria known not to be attainable as stated; see `cluster_monomial_rank`.
const EXPECTED_FAILURES: &[u32] = &[11];

/// Modulus for the exact rank computation in criterion 11.
const RANK_PRIME: u64 = (1 << 61) - 1;

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn five_vertex_quiver() -> Outcome {
    let q = five_vertex_example();
    let m = q.mutate("z").map_err(|e| e.to_string())?;
    let expected = Quiver::builder()
        .mutable("x")
        .mutable("y")
        .mutable("z")
        .frozen("u")
        .frozen("v")
        .arrow("u", "z", 1)
        .arrow("z", "v", 1)
        .arrow("x", "u", 2)
        .arrow("y", "z", 1)
        .arrow("z", "x", 1)
        .arrow("v", "y", 1)
        .build()
        .map_err(|e| e.to_string())?;
    check(m == expected, || format!("got {m}"))?;
    check(m.multiplicity("x", "y") + m.multiplicity("y", "x") == 0, || "x-y arrow present".into())?;
    Ok(format!("{} arrows, x->u doubled", m.arrows().count()))
}

fn five_vertex_relations() -> Outcome {
    let s = Seed::initial(&five_vertex_example());
    let (s1, r1) = s.mutate_with_relation("z").map_err(|e| e.to_string())?;
    check(&r1.old * &r1.new == poly(&s, "v*x + u*y"), || format!("first relation {r1}"))?;
    let (_, r2) = s1.mutate_with_relation("x").map_err(|e| e.to_string())?;
    let z1 = s1.attachment("z").unwrap();
    check(&r2.old * &r2.new == z1 + &poly(&s, "u^2"), || format!("second relation {r2}"))?;
    Ok(format!("z' = {}", r1.new))
}

fn sl4_enumeration() -> Outcome {
    let s = sl4_seed();
    let e = enumerate_exchange_graph(&s, 1000).map_err(|e| e.to_string())?;
    check(e.is_complete(), || "enumeration hit the cap".into())?;
    let g = e.graph();
    let vars = cluster_variables(g);
    check(g.seeds.len() == 14, || format!("{} seeds", g.seeds.len()))?;
    check(vars.len() == 9, || format!("{} cluster variables", vars.len()))?;
    check(g.generators().len() == 15, || format!("{} generators", g.generators().len()))?;
    check(g.is_regular() && g.degrees()[0] == 3, || format!("degrees {:?}", g.degrees()))?;

    let m = random_det_one(&mut rng(101), 4);
    let point = minor_point(&s, &m);
    let minor = |set: &[usize]| m.flag_minor(set).unwrap();
    let omega = -(minor(&[1]) * minor(&[2, 3, 4])) + minor(&[2]) * minor(&[1, 3, 4]);
    let displayed = [
        ("D2", "D12*D3 + D1*D23", minor(&[1, 3])),
        ("D3", "D4*D23 + D34*D2", minor(&[2, 4])),
        ("D23", "D123*D34*D2 + D12*D234*D3", omega),
    ];
    for (v, rhs, value) in displayed {
        let r = s.exchange_relation(v).map_err(|e| e.to_string())?;
        check(&r.old * &r.new == poly(&s, rhs), || format!("relation at {v}: {r}"))?;
        check(vars.contains(&r.new), || format!("{} is not among the cluster variables", r.new))?;
        check(r.new.evaluate(&point).unwrap() == value, || format!("new variable at {v} has the wrong value"))?;
    }
    Ok("14 seeds, 9 cluster variables, 15 generators, 3-regular".into())
}

fn omega_identity() -> Outcome {
    let s = sl4_seed();
    let omega = s.mutate("D23").map_err(|e| e.to_string())?.attachment("D23").unwrap().clone();
    let mut r = rng(202);
    let mut checked = 0;
    while checked < 100 {
        let m = random_det_one(&mut r, 4);
        let point = minor_point(&s, &m);
        let Ok(value) = omega.evaluate(&point) else { continue };
        let minor = |set: &[usize]| m.flag_minor(set).unwrap();
        let expected = -(minor(&[1]) * minor(&[2, 3, 4])) + minor(&[2]) * minor(&[1, 3, 4]);
        check(value == expected, || format!("mismatch on matrix {m}"))?;
        checked += 1;
    }
    Ok(format!("Omega = {omega} on {checked} matrices"))
}

fn laurent_suite() -> Outcome {
    let report = laurent_check(&Seed::initial(&kronecker()), 10, true, Exec::default());
    check(report.all_exact(), || format!("{:?}", report.laurent_violations))?;
    let kron_positive = report.positivity_counterexamples.is_empty();
    let mut r = rng(303);
    let start = Seed::initial(&markov());
    let mut markov_negative = 0;
    let mut markov_vars = BTreeSet::new();
    for _ in 0..200 {
        let mut s = start.clone();
        let mut last = "";
        for _ in 0..8 {
            let choices: Vec<&str> = ["1", "2", "3"].into_iter().filter(|v| *v != last).collect();
            let v = choices[r.gen_range(0..choices.len())];
            s = s.mutate(v).map_err(|e| format!("Markov division failed: {e}"))?;
            last = v;
            let x = s.attachment(v).unwrap();
            if !x.has_positive_coefficients() {
                markov_negative += 1;
            }
            markov_vars.insert(x.clone());
        }
    }
    // positivity is evidence for a conjecture: reported, not asserted
    Ok(format!(
        "Kronecker depth 10: {} variables, positive={}; Markov: {} variables, {} non-positive",
        report.cluster_variables,
        kron_positive,
        markov_vars.len(),
        markov_negative
    ))
}

fn all_orientations(q: &Quiver) -> Vec<Quiver> {
    let arrows: Vec<(String, String)> = q.arrows().map(|(a, b, _)| (a.id.clone(), b.id.clone())).collect();
    (0..1u32 << arrows.len())
        .map(|mask| {
            let flipped = arrows.iter().enumerate().map(|(i, (a, b))| {
                if mask >> i & 1 == 1 {
                    (b.clone(), a.clone(), 1)
                } else {
                    (a.clone(), b.clone(), 1)
                }
            });
            Quiver::new(q.vertices().to_vec(), flipped).unwrap()
        })
        .collect()
}

fn classification() -> Outcome {
    let verdict = |q: &Quiver| classify_quiver(q, 10_000, Exec::default());
    for n in 2..=5 {
        for q in all_orientations(&path(n)) {
            let v = verdict(&q);
            check(v.to_string() == format!("finite: A{n}"), || format!("{q}: {v}"))?;
        }
    }
    for q in all_orientations(&d_type(4)) {
        let v = verdict(&q);
        check(v.to_string() == "finite: D4", || format!("{q}: {v}"))?;
    }
    for (name, q) in [("Kronecker", kronecker()), ("Markov", markov())] {
        let v = verdict(&q);
        check(matches!(v, TypeVerdict::Infinite { .. }), || format!("{name}: {v}"))?;
    }
    Ok("A2..A5 in all orientations, D4 in all orientations, Kronecker and Markov infinite".into())
}

fn catalan_checks() -> Outcome {
    let a2 = enumerate_exchange_graph(&Seed::initial(&path(2)), 100).unwrap().into_graph();
    check(a2.seeds.len() == 5, || format!("A2: {} seeds", a2.seeds.len()))?;
    let a3 = enumerate_exchange_graph(&Seed::initial(&path(3)), 100).unwrap().into_graph();
    check(a3.seeds.len() == 14, || format!("A3: {} seeds", a3.seeds.len()))?;
    check(cluster_variables(&a3).len() == 9, || "A3 variables".into())?;
    let (ts, edges) = flip_graph(6).map_err(|e| e.to_string())?;
    check(ts.len() == 14, || format!("{} hexagon triangulations", ts.len()))?;
    let a3_edges: Vec<(usize, usize)> = a3.edges.iter().map(|e| (e.from, e.to)).collect();
    check(isomorphic_graphs(ts.len(), &edges, a3.seeds.len(), &a3_edges), || "flip graph differs".into())?;
    let sl4 = enumerate_exchange_graph(&sl4_seed(), 100).unwrap().into_graph();
    let chi = cluster_complex(&sl4).euler_characteristic();
    check(chi == 2, || format!("chi = {chi}"))?;
    Ok("5 / 14 seeds, flip graph = A3 exchange graph, chi = 2".into())
}

fn positivity_suite() -> Outcome {
    let mut r = rng(404);
    for _ in 0..1000 {
        let mut pick = || BigRational::new(r.gen_range(-2i64..=6).into(), r.gen_range(1i64..=2).into());
        let (x, y, z) = (pick(), pick(), pick());
        let closed = !x.is_negative() && !y.is_negative() && !z.is_negative() && !(&x * &z - &y).is_negative();
        check(is_totally_nonnegative(&unipotent3(&x, &y, &z)).unwrap() == closed, || format!("(a) at ({x}, {y}, {z})"))?;
    }
    for _ in 0..200 {
        let n = r.gen_range(2..=5);
        let factors: Vec<(usize, BigRational)> =
            (0..r.gen_range(0..=12)).map(|_| (r.gen_range(1..n), positive_rational(&mut r))).collect();
        let m = chevalley_product(n, &factors).unwrap();
        check(is_totally_nonnegative(&m).unwrap(), || format!("(b) {m}"))?;
    }
    let mut passing = 0;
    for n in [4, 5] {
        let snake = WiringDiagram::snake(n);
        for _ in 0..100 {
            let m = chamber_candidate(&mut r, n);
            if chamber_positivity_test(&m, &snake).unwrap() {
                passing += 1;
                check(m.all_flag_minors().iter().all(|(_, v)| v.is_positive()), || format!("(c) {m}"))?;
            }
        }
    }
    let words = all_reduced_words(4);
    let matrices: Vec<RationalMatrix> = (0..20).map(|_| random_matrix(&mut r, 4)).collect();
    let mut moves = 0;
    for w in &words {
        for mv in w.local_moves() {
            for m in &matrices {
                check(verify_exchange_identity(w, &mv, m).unwrap(), || format!("(d) {:?}", w.word()))?;
            }
            moves += 1;
        }
    }
    Ok(format!("{passing}/200 chamber-positive matrices sound, ef=ac+bd on {moves} moves x 20"))
}

fn transport() -> Outcome {
    let audit = audit_transport(4);
    check(audit.path_independent(), || format!("{audit:?}"))?;
    let s = WiringDiagram::snake(4);
    let mv = s.local_moves().into_iter().find(|m| m.old == vec![2]).ok_or("no move at {2}")?;
    let (_, q) = transport_quiver(&s, &[mv]).map_err(|e| e.to_string())?;
    let mut got: Vec<(String, String, u32)> = q.arrows().map(|(a, b, m)| (a.id.clone(), b.id.clone(), m)).collect();
    let mut want: Vec<(String, String, u32)> = [
        ("D1", "D13"),
        ("D13", "D3"),
        ("D4", "D3"),
        ("D34", "D23"),
        ("D23", "D13"),
        ("D3", "D34"),
        ("D23", "D234"),
        ("D13", "D12"),
        ("D123", "D23"),
        ("D3", "D1"),
    ]
    .iter()
    .map(|(a, b)| (a.to_string(), b.to_string(), 1))
    .collect();
    got.sort();
    want.sort();
    check(got == want, || format!("one-move quiver {q}"))?;
    Ok(format!("{} classes, {} moves agree; one-move quiver from the snake reproduced", audit.classes, audit.moves_checked))
}

fn surface_suite() -> Outcome {
    let mut r = rng(505);
    let mut flips = 0;
    for n in 6..=9 {
        let empty = MultiLamination::empty(n);
        let random = random_multi_lamination(&mut r, n, 3);
        for t in triangulations(n).unwrap() {
            for d in t.diagonals() {
                check(verify_flip_mutation(&t, &empty, d).unwrap(), || format!("{t} at {d}"))?;
                check(verify_flip_mutation(&t, &random, d).unwrap(), || format!("{t} at {d} laminated"))?;
                flips += 1;
            }
        }
    }
    let (t, ml) = hexagon_fixture();
    let q = quiver_with_laminations(&t, &ml).map_err(|e| e.to_string())?;
    let named = q
        .map_vertices(|v| {
            let id = if v.frozen {
                v.id.clone()
            } else {
                let (a, b) = v.id[1..].split_once('_').unwrap();
                hexagon_diagonal_name((a.parse().unwrap(), b.parse().unwrap())).to_string()
            };
            Vertex { label: format!("Δ{}", &id[1..]), id, frozen: v.frozen }
        })
        .unwrap();
    check(named == clusterlab::positivity::snake_quiver(4), || format!("hexagon quiver {q}"))?;
    for _ in 0..100 {
        let n = r.gen_range(4..=8);
        let ts = triangulations(n).unwrap();
        let t = &ts[r.gen_range(0..ts.len())];
        let l = random_lamination(&mut r, n, 4, 3);
        let v = shear_vector(t, &l).unwrap();
        check(inverse_shear(t, &v).map_err(|e| e.to_string())? == l, || format!("round trip of {l} on {t}"))?;
    }
    let mut sizes = Vec::new();
    for n in 6..=8 {
        let class = mutation_class(&Triangulation::fan(n).quiver(), 10_000);
        check(class.is_complete(), || format!("mutation class of n = {n} did not close"))?;
        sizes.push(class.len());
    }
    Ok(format!("{flips} flips, hexagon laminations give the SL4/N quiver, 100 round trips, class sizes {sizes:?}"))
}

/// Rank of the evaluation matrix of all cluster monomials of degree <= 3 at
/// `points` random rational points, computed exactly modulo a prime. A rank
/// mod p equal to the count implies full rank over the rationals.
fn monomial_rank(points: usize, seed: u64) -> (usize, usize) {
    let g = enumerate_exchange_graph(&sl4_seed(), 100).unwrap().into_graph();
    let monomials = cluster_monomials(&g, 3);
    let nvars = g.seeds[0].vars().len();
    let mut r = rng(seed);
    let rows: Vec<Vec<u64>> = (0..points)
        .map(|_| {
            let pt: Vec<BigRational> = (0..nvars)
                .map(|_| {
                    let x = small_rational(&mut r);
                    if x.is_zero() { one() } else { x }
                })
                .collect();
            monomials
                .iter()
                .map(|m: &clusterlab::seed::ClusterMonomial| residue(&m.value.evaluate(&pt).unwrap(), RANK_PRIME))
                .collect()
        })
        .collect();
    (rank_mod_p(rows, RANK_PRIME), monomials.len())
}

fn cluster_monomial_rank() -> Outcome {
    // The monomial count exceeds 200, so 200 evaluations cannot have rank
    // equal to it; the companion run with more points shows independence.
    let (rank, count) = monomial_rank(200, 606);
    let (full_rank, _) = monomial_rank(count + 40, 607);
    let companion = format!("companion: rank {full_rank} of {count} at {} points", count + 40);
    if rank == count {
        Ok(format!("rank {rank} = {count} monomials; {companion}"))
    } else {
        Err(format!("rank {rank} at 200 points, {count} monomials; {companion}"))
    }
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn main() {
    let criteria = [
        Criterion { id: 1, name: "five-vertex quiver mutation", limit: Duration::from_secs(1), run: five_vertex_quiver },
        Criterion { id: 2, name: "five-vertex exchange relations", limit: Duration::from_secs(1), run: five_vertex_relations },
        Criterion { id: 3, name: "SL4/N exchange graph", limit: Duration::from_secs(10), run: sl4_enumeration },
        Criterion { id: 4, name: "Omega identity", limit: Duration::from_secs(10), run: omega_identity },
        Criterion { id: 5, name: "Laurent phenomenon", limit: Duration::from_secs(60), run: laurent_suite },
        Criterion { id: 6, name: "finite type classification", limit: Duration::from_secs(30), run: classification },
        Criterion { id: 7, name: "pentagon and Catalan counts", limit: Duration::from_secs(10), run: catalan_checks },
        Criterion { id: 8, name: "total positivity", limit: Duration::from_secs(60), run: positivity_suite },
        Criterion { id: 9, name: "transport path independence", limit: Duration::from_secs(30), run: transport },
        Criterion { id: 10, name: "polygon flips and laminations", limit: Duration::from_secs(120), run: surface_suite },
        Criterion { id: 11, name: "cluster monomial rank", limit: Duration::from_secs(60), run: cluster_monomial_rank },
    ];
    let mut failed = Vec::new();
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > c.limit => Err(format!("too slow: {detail}")),
            other => other,
        };
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        println!(
            "{tag} {:>2} {:<30} {:>8.2}s / {:>3}s  {detail}",
            c.id,
            c.name,
            elapsed.as_secs_f64(),
            c.limit.as_secs()
        );
        if outcome.is_err() {
            failed.push(c.id);
        }
    }
    let unexpected: Vec<u32> = failed.iter().copied().filter(|id| !EXPECTED_FAILURES.contains(id)).collect();
    let fixed: Vec<u32> = EXPECTED_FAILURES.iter().copied().filter(|id| !failed.contains(id)).collect();
    println!(
        "{} passed, {} failed {failed:?}; expected failures {EXPECTED_FAILURES:?}",
        criteria.len() - failed.len(),
        failed.len()
    );
    if !unexpected.is_empty() || !fixed.is_empty() {
        println!("unexpected failures {unexpected:?}, unexpected passes {fixed:?}");
        std::process::exit(1);
    }
}
