//! Release gate: every shipping criterion checked in one sequential run.
//!
//! Each criterion prints exactly one PASS or FAIL line; the process exits
//! nonzero when any criterion fails. The target runs without the threaded
//! libtest harness because three criteria assert wall-clock budgets that
//! only hold when nothing else competes for the machine.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use trinogen::fqpoly::{Fq, FpPoly, FqPoly};
use trinogen::intarith::{count_irreducibles, divisors, vp, vp_binomial, Valuation};
use trinogen::monogenity::{
    analyze, certify_family, certify_mono, common_index_divisor_test, fired_clauses,
    irreducible_factor_count, DivisorOutcome, FamilyTable, IndexDivisorWitness, MonoParams,
    VerdictStatus,
};
use trinogen::newton::{
    development_points, is_admissible, is_p_regular, phi_index, phi_newton_polygon,
    principal_polygon, residual_polynomial, LatticePoint, NewtonPolygon, Side,
};
use trinogen::ore::{analyze_prime, refine_lift};
use trinogen::zpoly::{
    discriminant_resultant, irreducibility_certificate, phi_expansion, trinomial_discriminant,
    IntPoly, Trinomial,
};

type Criterion = (u32, fn() -> String);

fn main() {
    // Failures surface as single FAIL lines; the default panic banner would
    // only duplicate them on stderr.
    std::panic::set_hook(Box::new(|_| {}));
    let criteria: &[Criterion] = &[
        (1, quartic_polygon_walkthrough),
        (2, prime_power_generator_certificate),
        (3, quintic_clause_representatives),
        (4, sextic_clause_representatives),
        (5, counting_identities),
        (6, property_suites),
        (7, discrepancy_reporting),
        (8, mixed_degree_scan),
    ];
    let mut failures = 0;
    for &(k, run) in criteria {
        match catch_unwind(AssertUnwindSafe(run)) {
            Ok(detail) => println!("criterion {k}: PASS - {detail}"),
            Err(payload) => {
                failures += 1;
                let msg = payload
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_else(|| "panic without message".to_string());
                println!("criterion {k}: FAIL - {msg}");
            }
        }
    }
    if failures > 0 {
        println!("acceptance: {failures} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
    println!("acceptance: all {} criteria passed", criteria.len());
}

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

fn tri(n: u32, a: i64, b: i64) -> Trinomial {
    Trinomial::new(n, big(a), big(b)).unwrap()
}

fn coords(poly: &NewtonPolygon) -> Vec<(u64, u64)> {
    poly.vertices().iter().map(|v| (v.i, v.u)).collect()
}

fn shape_at(f: &IntPoly, p: u64) -> Vec<(u64, u64)> {
    let analysis = analyze_prime(f, p).unwrap();
    assert!(
        analysis.shape.complete,
        "shape at {p} incomplete: {:?}",
        analysis.shape.diagnostics
    );
    analysis.shape.primes
}

fn witness_at(f: &IntPoly, p: u64) -> IndexDivisorWitness {
    match common_index_divisor_test(f, p).unwrap().outcome {
        DivisorOutcome::Witness(w) => w,
        other => panic!("expected a witness at {p} for {f}, got {other}"),
    }
}

struct XorShift(u64);

impl XorShift {
    fn next(&mut self) -> u64 {
        self.0 ^= self.0 << 13;
        self.0 ^= self.0 >> 7;
        self.0 ^= self.0 << 17;
        self.0
    }
}

// ---------------------------------------------------------------------------
// criterion 1: the quartic polygon walkthrough, end to end, under 100 ms
// ---------------------------------------------------------------------------

fn quartic_polygon_walkthrough() -> String {
    let started = Instant::now();
    let f = IntPoly::from_i64(&[95, -8, 12, -4, 1]);
    let phi = IntPoly::from_i64(&[-1, 1]);

    let dev = phi_expansion(&f, &phi, 2).unwrap();
    let constants: Vec<BigInt> = dev.coefficients.iter().map(|c| c.coeff(0)).collect();
    assert_eq!(constants, vec![big(96), big(8), big(6), big(0), big(1)]);
    assert_eq!(dev.reconstruct(), f);

    let polygon = phi_newton_polygon(&f, &phi, 2).unwrap();
    assert_eq!(coords(&polygon), vec![(0, 5), (2, 1), (4, 0)]);

    let sides = polygon.sides();
    assert_eq!(sides.len(), 2);
    let r0 = residual_polynomial(&phi, &dev.coefficients, 2, &sides[0]).unwrap();
    let r1 = residual_polynomial(&phi, &dev.coefficients, 2, &sides[1]).unwrap();
    assert_eq!(r0.poly.render("y"), "y^2 + y + 1");
    assert_eq!(r1.poly.render("y"), "y + 1");

    assert_eq!(phi_index(&polygon, 1).unwrap(), 4);

    let analysis = analyze_prime(&f, 2).unwrap();
    assert!(analysis.shape.complete);
    assert_eq!(analysis.shape.primes, vec![(1, 2), (2, 1)]);
    assert_eq!(analysis.ore.index_lower_bound, 4);
    assert!(analysis.ore.regular);

    let elapsed = started.elapsed();
    assert!(
        elapsed < Duration::from_millis(100),
        "walkthrough took {elapsed:?}, budget 100 ms"
    );
    format!(
        "development [96,8,6,0,1], vertices (0,5),(2,1),(4,0), residuals y^2+y+1 / y+1, \
         index 4, shape {{(1,2),(2,1)}} in {elapsed:.2?}"
    )
}

// ---------------------------------------------------------------------------
// criterion 2: generator certificate for x^4 + 8x + 8
// ---------------------------------------------------------------------------

fn prime_power_generator_certificate() -> String {
    let t = tri(4, 8, 8);
    let params = MonoParams::from_trinomial(&t).unwrap();
    let cert = certify_mono(&params).unwrap();

    assert_eq!((cert.x, cert.y), (3, 2));
    assert_eq!(cert.generator(), "theta^3/4");
    let g = &cert.minimal_polynomial;
    assert_eq!(*g, IntPoly::from_i64(&[2, 8, 12, 6, 1]));

    // Eisenstein at 2, re-derived from raw valuations rather than trusting
    // the certificate's own flag.
    let deg = g.degree().unwrap();
    assert!(g.leading_coeff().is_one());
    for i in 0..deg {
        assert!(vp(&g.coeff(i), 2).unwrap() >= Valuation::Finite(1), "coeff {i}");
    }
    assert_eq!(vp(&g.coeff(0), 2).unwrap(), Valuation::Finite(1));

    // The trinomial discriminant is 5 * 2^12 by both computation routes.
    let expected = big(5) * big(2).pow(12);
    assert_eq!(trinomial_discriminant(&t), expected);
    assert_eq!(discriminant_resultant(&t.to_poly()).unwrap(), expected);
    assert_eq!(cert.disc_valuation_f, 12);
    assert_eq!(cert.disc_valuation_eta, 6);

    "theta^3/4 with minimal polynomial x^4+6x^3+12x^2+8x+2 (Eisenstein at 2), disc 5*2^12"
        .to_string()
}

// ---------------------------------------------------------------------------
// criterion 3: quintic clause representatives and their splitting shapes
// ---------------------------------------------------------------------------

/// One representative per clause of the quintic table. The published example
/// pairs for clauses 2 and 4 define reducible trinomials (x = -1 is a root),
/// so irreducible members of the same residue classes stand in: (7,24) for
/// (7,8) mod 16 and (3,68) for (3,4) mod 64.
fn quintic_clause_representatives() -> String {
    struct Rep {
        a: i64,
        b: i64,
        clause: u32,
        shape: &'static [(u64, u64)],
        /// Linear lift whose polygon is pinned, with the expected vertices.
        lift: i64,
        vertices: &'static [(u64, u64)],
    }
    let reps = [
        Rep { a: 5, b: 2, clause: 1, shape: &[(1, 1), (1, 1), (3, 1)], lift: 1, vertices: &[(0, 3), (1, 1), (4, 0)] },
        Rep { a: 7, b: 24, clause: 2, shape: &[(1, 1), (1, 1), (1, 1), (2, 1)], lift: 1, vertices: &[(0, 5), (1, 2), (2, 1), (4, 0)] },
        Rep { a: 19, b: 4, clause: 3, shape: &[(1, 1), (2, 1), (2, 1)], lift: 1, vertices: &[(0, 3), (2, 1), (4, 0)] },
        Rep { a: 3, b: 68, clause: 4, shape: &[(1, 1), (1, 1), (1, 1), (2, 1)], lift: 1, vertices: &[(0, 3), (2, 1), (4, 0)] },
        Rep { a: 3, b: 12, clause: 5, shape: &[(1, 1), (2, 1), (2, 1)], lift: 1, vertices: &[(0, 4), (2, 1), (4, 0)] },
        Rep { a: 3, b: 60, clause: 6, shape: &[(1, 1), (1, 1), (1, 1), (2, 1)], lift: 1, vertices: &[(0, 6), (1, 3), (2, 1), (4, 0)] },
        Rep { a: 28, b: 32, clause: 7, shape: &[(1, 1), (2, 1), (2, 1)], lift: 0, vertices: &[(0, 5), (1, 2), (5, 0)] },
    ];
    for rep in &reps {
        let t = tri(5, rep.a, rep.b);
        let f = t.to_poly();
        let label = format!("({},{})", rep.a, rep.b);

        let fired = fired_clauses(&t);
        assert!(
            fired.iter().any(|c| c.table == FamilyTable::QuinticDegree
                && c.clause == rep.clause
                && c.p == 2),
            "{label}: clause {} did not fire",
            rep.clause
        );

        assert_eq!(shape_at(&f, 2), rep.shape, "{label}");

        // Polygon structure at the pinned degree-one lift.
        let phi = IntPoly::from_i64(&[-rep.lift, 1]);
        let polygon = phi_newton_polygon(&f, &phi, 2).unwrap();
        assert_eq!(coords(&polygon), rep.vertices, "{label} at {phi}");

        // Every representative over-populates residue degree one.
        let w = witness_at(&f, 2);
        assert_eq!(w.residue_degree, 1, "{label}");
        assert_eq!(w.available, big(2), "{label}: N_2(1)");
        let p1 = rep.shape.iter().filter(|&&(_, fd)| fd == 1).count() as u64;
        assert_eq!(w.primes_above, p1, "{label}");
        assert!(p1 > 2, "{label}");

        let cert = certify_family(&t, FamilyTable::QuinticDegree).unwrap();
        assert_eq!(cert.engine_confirms, Some(true), "{label}");
    }

    // Clause 3 pivots on a lift refinement: the slope -1 side at x - 1 has
    // the doubled residual root 1, and the refined lift x - 3 exposes the
    // final polygon (0,4) -> (2,1) -> (4,0).
    {
        let f = tri(5, 19, 4).to_poly();
        let phi = IntPoly::from_i64(&[-1, 1]);
        let polygon = phi_newton_polygon(&f, &phi, 2).unwrap();
        let side = polygon.sides()[0];
        assert_eq!((side.slope.h, side.slope.e), (1, 1));
        let dev = phi_expansion(&f, &phi, 2).unwrap();
        let residual = residual_polynomial(&phi, &dev.coefficients, 2, &side).unwrap();
        assert_eq!(residual.poly.render("y"), "y^2 + 1");
        let root = residual.poly.context().one();
        let refined = refine_lift(&f, 2, &phi, &side, &root).unwrap();
        assert_eq!(refined, IntPoly::from_i64(&[-3, 1]));
        let refined_polygon = phi_newton_polygon(&f, &refined, 2).unwrap();
        assert_eq!(coords(&refined_polygon), vec![(0, 4), (2, 1), (4, 0)]);
    }

    // Clause 4's refinement opens into three sides.
    {
        let f = tri(5, 3, 68).to_poly();
        let phi = IntPoly::from_i64(&[-1, 1]);
        let polygon = phi_newton_polygon(&f, &phi, 2).unwrap();
        let side = polygon.sides()[0];
        let dev = phi_expansion(&f, &phi, 2).unwrap();
        let residual = residual_polynomial(&phi, &dev.coefficients, 2, &side).unwrap();
        let root = residual.poly.context().one();
        let refined = refine_lift(&f, 2, &phi, &side, &root).unwrap();
        let refined_polygon = phi_newton_polygon(&f, &refined, 2).unwrap();
        assert_eq!(refined_polygon.sides().len(), 3);
        assert_eq!(coords(&refined_polygon), vec![(0, 6), (1, 3), (2, 1), (4, 0)]);
    }

    // Clause 7 needs the order-two machinery: the slope -1/2 side at x has
    // residual (y+1)^2, and for (28,32) the second-order polygon splits it
    // into two ramified primes.
    {
        let f = tri(5, 28, 32).to_poly();
        let analysis = analyze_prime(&f, 2).unwrap();
        assert!(analysis.witnesses.iter().any(|w| w.order == 2));
    }

    // The (4,8) member of clause 7 is the documented deviation: the engine
    // computes the complete shape {(1,1),(4,1)}, which no residue degree
    // over-populates, so the clause's claim fails for this member and the
    // disagreement must be reported rather than papered over.
    let outlier = tri(5, 4, 8);
    let f = outlier.to_poly();
    assert_eq!(
        coords(&phi_newton_polygon(&f, &IntPoly::x(), 2).unwrap()),
        vec![(0, 3), (1, 2), (5, 0)]
    );
    assert_eq!(shape_at(&f, 2), vec![(1, 1), (4, 1)]);
    let report = common_index_divisor_test(&f, 2).unwrap();
    assert_eq!(report.outcome, DivisorOutcome::NoWitness);
    let cert = certify_family(&outlier, FamilyTable::QuinticDegree).unwrap();
    assert_eq!(cert.clause.as_ref().map(|c| c.clause), Some(7));
    assert_eq!(cert.engine_confirms, Some(false));
    assert!(cert.notes.iter().any(|n| n.contains("disagreement")));

    "clauses 1-7 fire with pinned polygons and shapes; witness P_1 > 2 on every \
     representative ((7,24)/(3,68) replace the reducible published pairs; the (4,8) \
     member of clause 7 is refuted by the engine's shape {(1,1),(4,1)} and surfaced \
     as a disagreement)"
        .to_string()
}

// ---------------------------------------------------------------------------
// criterion 4: sextic clause representatives
// ---------------------------------------------------------------------------

fn sextic_clause_representatives() -> String {
    // x^6 + 270x + 26: four primes of residue degree one above 3.
    let t = tri(6, 270, 26);
    let f = t.to_poly();
    assert_eq!(shape_at(&f, 3), vec![(1, 1), (1, 1), (2, 1), (2, 1)]);
    let w = witness_at(&f, 3);
    assert_eq!((w.residue_degree, w.primes_above), (1, 4));
    assert_eq!(w.available, big(3));
    let cert = certify_family(&t, FamilyTable::SexticDegree).unwrap();
    assert_eq!(cert.clause.as_ref().map(|c| (c.clause, c.p)), Some((4, 3)));
    assert_eq!(cert.engine_confirms, Some(true));

    // x^6 + 6x + 9: two primes of residue degree two above 2.
    let t = tri(6, 6, 9);
    let f = t.to_poly();
    assert_eq!(shape_at(&f, 2), vec![(1, 2), (2, 2)]);
    let report = common_index_divisor_test(&f, 2).unwrap();
    assert_eq!(report.census.count(2), 2);
    let w = witness_at(&f, 2);
    assert_eq!((w.residue_degree, w.primes_above), (2, 2));
    assert_eq!(w.available, big(1));
    let cert = certify_family(&t, FamilyTable::SexticDegree).unwrap();
    assert_eq!(cert.clause.as_ref().map(|c| (c.clause, c.p)), Some((2, 2)));
    assert_eq!(cert.engine_confirms, Some(true));

    "(270,26): P_1 = 4 > 3 at p=3; (6,9): two primes of residue degree 2, P_2 = 2 > 1 at p=2"
        .to_string()
}

// ---------------------------------------------------------------------------
// criterion 5: counting identities for irreducible polynomials
// ---------------------------------------------------------------------------

fn counting_identities() -> String {
    assert_eq!(count_irreducibles(2, 1).unwrap(), big(2));
    assert_eq!(count_irreducibles(2, 2).unwrap(), big(1));
    assert_eq!(count_irreducibles(3, 1).unwrap(), big(3));

    // sum over d | m of d * N_p(d) = p^m
    for p in [2u64, 3, 5, 7] {
        for m in 1u32..=8 {
            let mut total = BigInt::zero();
            for d in divisors(m as u64) {
                total += big(d as i64) * count_irreducibles(p, d as u32).unwrap();
            }
            assert_eq!(total, big(p as i64).pow(m), "p = {p}, m = {m}");
        }
    }

    // restricted counts: irreducible degree-m factors of x^s + t over F_3
    let two = big(2);
    for k in 1u32..=8 {
        let s = 2u32.pow(k);
        assert_eq!(irreducible_factor_count(3, s, &two, 1).unwrap(), 2, "k = {k}");
    }
    assert_eq!(irreducible_factor_count(3, 4, &two, 2).unwrap(), 1);
    for k in [3u32, 4] {
        let s = 2u32.pow(k);
        assert_eq!(irreducible_factor_count(3, s, &two, 2).unwrap(), 3, "k = {k}");
    }

    "N_2(1)=2, N_2(2)=1, N_3(1)=3; necklace identity for p <= 7, m <= 8; \
     restricted factor counts of x^(2^k)+2 over F_3"
        .to_string()
}

// ---------------------------------------------------------------------------
// criterion 6: randomized property suites with independent oracles, < 60 s
// ---------------------------------------------------------------------------

/// Gift-wrapped lower hull restricted to falling sides: an implementation of
/// the polygon's vertex chain that shares no code with the monotone chain.
fn hull_oracle(points: &[LatticePoint]) -> Vec<(u64, u64)> {
    let mut lowest: BTreeMap<u64, u64> = BTreeMap::new();
    for p in points {
        lowest
            .entry(p.i)
            .and_modify(|u| *u = (*u).min(p.u))
            .or_insert(p.u);
    }
    let pts: Vec<(u64, u64)> = lowest.into_iter().collect();
    let Some(&start) = pts.first() else { return Vec::new() };
    let mut chain = vec![start];
    let mut cur = start;
    loop {
        // steepest descent from cur; ties go to the farthest point
        let mut best: Option<(u64, u64)> = None;
        for &q in pts.iter().filter(|q| q.0 > cur.0 && q.1 < cur.1) {
            let better = match best {
                None => true,
                Some(b) => {
                    // compare -(cur.1-q.1)/(q.0-cur.0) against the incumbent
                    let lhs = (cur.1 - q.1) as u128 * (b.0 - cur.0) as u128;
                    let rhs = (cur.1 - b.1) as u128 * (q.0 - cur.0) as u128;
                    lhs > rhs || (lhs == rhs && q.0 > b.0)
                }
            };
            if better {
                best = Some(q);
            }
        }
        match best {
            Some(q) => {
                chain.push(q);
                cur = q;
            }
            None => break,
        }
    }
    if chain.len() < 2 {
        return Vec::new();
    }
    chain
}

/// Lattice points strictly under the vertex chain with positive ordinate,
/// computed from the chain alone.
fn index_oracle(vertices: &[(u64, u64)]) -> u64 {
    let mut count = 0;
    for w in vertices.windows(2) {
        let ((i0, u0), (i1, u1)) = (w[0], w[1]);
        for i in (i0 + 1)..=i1 {
            // floor of the chain height at abscissa i
            let num = u0 * (i1 - i0) - (i - i0) * (u0 - u1);
            count += num / (i1 - i0);
        }
    }
    count
}

/// Residual coefficients of a side for a degree-one lift, from raw integer
/// arithmetic on the development constants.
fn residual_oracle(constants: &[BigInt], side: &Side, p: u64) -> Vec<u64> {
    let mut out = Vec::new();
    for j in 0..=side.degree() {
        let i = (side.start.i + j * side.slope.e) as usize;
        let expected = side.start.u - j * side.slope.h;
        let a = constants.get(i).cloned().unwrap_or_else(BigInt::zero);
        let on_line = vp(&a, p).unwrap() == Valuation::Finite(expected);
        if on_line {
            let pb = big(p as i64);
            let unit = a / pb.pow(expected as u32);
            let r = ((unit % &pb) + &pb) % &pb;
            out.push(u64::try_from(r).unwrap());
        } else {
            out.push(0);
        }
    }
    out
}

fn property_suites() -> String {
    let started = Instant::now();

    // (a) the closed-form trinomial discriminant equals the resultant route
    let mut rng = XorShift(0x6c62272e07bb0142);
    for _ in 0..1000 {
        let n = (rng.next() % 11) as u32 + 2;
        let a = (rng.next() % 2_000_001) as i64 - 1_000_000;
        let mut b = (rng.next() % 2_000_001) as i64 - 1_000_000;
        if b == 0 {
            b = 1;
        }
        let t = tri(n, a, b);
        assert_eq!(
            trinomial_discriminant(&t),
            discriminant_resultant(&t.to_poly()).unwrap(),
            "n={n}, a={a}, b={b}"
        );
    }

    // (b) binomial-coefficient valuations, exhaustively against factorials
    for (p, rmax) in [(2u64, 5u32), (3, 5), (5, 5)] {
        for r in 1..=rmax {
            let pr = p.pow(r);
            let mut binom = BigInt::one();
            for j in 0..=pr {
                assert_eq!(
                    vp_binomial(p, r, &BigInt::from(j)).unwrap(),
                    vp(&binom, p).unwrap(),
                    "C({pr},{j}) at {p}"
                );
                if j < pr {
                    // C(pr, j+1) = C(pr, j) * (pr - j) / (j + 1)
                    binom = binom * big((pr - j) as i64) / big((j + 1) as i64);
                }
            }
        }
    }

    // (c) hull, index, and residual oracles across every pinned input
    let fixtures: Vec<(IntPoly, u64)> = vec![
        (IntPoly::from_i64(&[95, -8, 12, -4, 1]), 2),
        (tri(5, 5, 2).to_poly(), 2),
        (tri(5, 7, 24).to_poly(), 2),
        (tri(5, 19, 4).to_poly(), 2),
        (tri(5, 3, 68).to_poly(), 2),
        (tri(5, 3, 12).to_poly(), 2),
        (tri(5, 3, 60).to_poly(), 2),
        (tri(5, 28, 32).to_poly(), 2),
        (tri(5, 4, 8).to_poly(), 2),
        (tri(6, 270, 26).to_poly(), 3),
        (tri(6, 6, 9).to_poly(), 2),
        (tri(10, 161, 576).to_poly(), 3),
        (tri(27, 810, 2).to_poly(), 3),
    ];
    let mut oracle_checks = 0usize;
    for (f, p) in &fixtures {
        let report = is_p_regular(f, *p).unwrap();
        for fr in &report.factors {
            let points = development_points(&fr.development.coefficients, *p).unwrap();
            assert_eq!(
                coords(&fr.polygon),
                hull_oracle(&points),
                "hull of {f} at {p}, lift {}",
                fr.lift
            );
            if !fr.polygon.sides().is_empty() {
                let deg_phi = fr.lift.degree().unwrap() as u64;
                assert_eq!(
                    phi_index(&fr.polygon, deg_phi).unwrap(),
                    index_oracle(&coords(&fr.polygon)) * deg_phi,
                    "index of {f} at {p}"
                );
            }
            if fr.lift.degree() == Some(1) {
                let constants: Vec<BigInt> =
                    fr.development.coefficients.iter().map(|c| c.coeff(0)).collect();
                for r in &fr.residuals {
                    let got: Vec<u64> = (0..=r.side.degree())
                        .map(|j| r.poly.coeff(j as usize).coeff(0))
                        .collect();
                    assert_eq!(
                        got,
                        residual_oracle(&constants, &r.side, *p),
                        "residual of {f} at {p}, side {}",
                        r.side
                    );
                }
            }
            oracle_checks += 1;
        }
    }
    // plus the bare point-set fixtures
    for pts in [
        vec![(0u64, 5u64), (1, 3), (2, 1), (4, 0)],
        vec![(0, 3), (1, 1), (2, 1), (3, 1), (4, 0), (5, 0)],
        vec![(0, 3), (1, 2), (5, 0)],
    ] {
        let input: Vec<LatticePoint> =
            pts.iter().map(|&(i, u)| LatticePoint::new(i, u)).collect();
        let poly = principal_polygon(&input);
        assert_eq!(coords(&poly), hull_oracle(&input));
        assert_eq!(phi_index(&poly, 1).unwrap(), index_oracle(&coords(&poly)));
        oracle_checks += 1;
    }

    // (d) complete shapes of certified-irreducible trinomials sum to n
    let mut rng = XorShift(0x2545f4914f6cdd1d);
    let mut degree_checks = 0;
    while degree_checks < 120 {
        let n = (rng.next() % 6) as u32 + 2;
        let a = (rng.next() % 60) as i64 - 30;
        let b = (rng.next() % 60) as i64 - 30;
        if b == 0 {
            continue;
        }
        let t = tri(n, a, b);
        if !irreducibility_certificate(&t).unwrap().proves_irreducible() {
            continue;
        }
        let p = [2u64, 3, 5][(rng.next() % 3) as usize];
        let shape = match analyze_prime(&t.to_poly(), p) {
            Ok(s) => s.shape,
            Err(_) => continue,
        };
        if shape.complete {
            assert_eq!(shape.degree_sum(), n as u64, "n={n}, a={a}, b={b}, p={p}");
            degree_checks += 1;
        }
    }

    // (e) factoring over F_p and over F_4 rebuilds the input, 500 runs each
    let mut rng = XorShift(0x9e3779b97f4a7c15);
    for _ in 0..500 {
        let p = [2u64, 3, 5, 7, 31][(rng.next() % 5) as usize];
        let deg = (rng.next() % 8) as usize + 1;
        let mut coeffs: Vec<i64> = (0..=deg).map(|_| (rng.next() % p) as i64).collect();
        if coeffs[deg] == 0 {
            coeffs[deg] = 1;
        }
        let f = FpPoly::new(p, &coeffs).unwrap();
        let mut product = FpPoly::constant(p, f.leading_coeff());
        let mut total = 0;
        for (g, m) in f.factor().unwrap() {
            assert!(g.is_irreducible(), "reducible factor {g} of {f} mod {p}");
            total += g.degree().unwrap() * m as usize;
            for _ in 0..m {
                product = product.mul(&g).unwrap();
            }
        }
        assert_eq!(product, f, "mod {p}");
        assert_eq!(total, deg);
    }
    let ctx = Fq::new(FpPoly::new(2, &[1, 1, 1]).unwrap()).unwrap();
    for _ in 0..500 {
        let deg = (rng.next() % 6) as usize + 1;
        let mut coeffs: Vec<FpPoly> = (0..=deg)
            .map(|_| FpPoly::new(2, &[(rng.next() % 2) as i64, (rng.next() % 2) as i64]).unwrap())
            .collect();
        if coeffs[deg].is_zero() {
            coeffs[deg] = ctx.one();
        }
        let f = FqPoly::from_base(&ctx, coeffs).unwrap();
        let mut product = FqPoly::constant(&ctx, f.leading_coeff()).unwrap();
        for (g, m) in f.factor().unwrap() {
            assert!(g.is_monic());
            for _ in 0..m {
                product = product.mul(&g).unwrap();
            }
        }
        assert_eq!(product, f);
    }

    // (f) admissible developments reproduce the adic polygon and residuals
    let mut rng = XorShift(0x41c64e6d41c64e6d);
    let mut admissible_checks = 0;
    while admissible_checks < 80 {
        let p = [2u64, 3][(rng.next() % 2) as usize];
        let df = (rng.next() % 5) as usize + 2;
        let mut fc: Vec<i64> = (0..=df)
            .map(|_| ((rng.next() % 40) as i64 - 20) * p as i64)
            .collect();
        fc[df] = 1;
        let f = IntPoly::from_i64(&fc);
        let phi = IntPoly::from_i64(&[(rng.next() % 3) as i64 - 1, 1]);
        let dev = phi_expansion(&f, &phi, p).unwrap();
        if dev.coefficients[0].is_zero() || dev.coefficients.len() < 3 {
            continue;
        }
        let k = dev.coefficients.len();
        let j = (rng.next() % (k as u64 - 2)) as usize;
        let h = IntPoly::from_i64(&[(rng.next() % 7) as i64 - 3]);
        let mut shifted = dev.coefficients.clone();
        shifted[j] = shifted[j].add(&h.mul(&phi));
        shifted[j + 1] = shifted[j + 1].sub(&h);
        let rebuilt = shifted
            .iter()
            .rev()
            .fold(IntPoly::zero(), |acc, a| acc.mul(&phi).add(a));
        assert_eq!(rebuilt, f);
        if !is_admissible(&phi, &shifted, p).unwrap() {
            continue;
        }
        let adic = principal_polygon(&development_points(&dev.coefficients, p).unwrap());
        let general = principal_polygon(&development_points(&shifted, p).unwrap());
        assert_eq!(adic.vertices(), general.vertices(), "f={f}, phi={phi}, p={p}");
        for (sa, sg) in adic.sides().iter().zip(general.sides()) {
            let ra = residual_polynomial(&phi, &dev.coefficients, p, sa).unwrap();
            let rg = residual_polynomial(&phi, &shifted, p, sg).unwrap();
            assert_eq!(ra.poly, rg.poly, "f={f}, phi={phi}, p={p}");
        }
        admissible_checks += 1;
    }

    let elapsed = started.elapsed();
    assert!(
        elapsed < Duration::from_secs(60),
        "property suites took {elapsed:?}, budget 60 s"
    );
    format!(
        "discriminant routes x1000, binomial valuations exhaustive, \
         {oracle_checks} oracle fixtures, degree sums x{degree_checks}, \
         factor reconstruction x500 over F_p and F_4, admissibility x{admissible_checks} \
         in {elapsed:.2?}"
    )
}

// ---------------------------------------------------------------------------
// criterion 7: honest reporting when no conclusion is available
// ---------------------------------------------------------------------------

fn discrepancy_reporting() -> String {
    for (n, a, b, shape3) in [
        (27u32, 810i64, 2i64, vec![(27u64, 1u64)]),
        (10, 161, 576, vec![(1, 1), (3, 1), (6, 1)]),
    ] {
        let t = tri(n, a, b);
        let label = format!("x^{n}+{a}x+{b}");
        let verdict = analyze(&t).unwrap();
        assert_eq!(verdict.status, VerdictStatus::Inconclusive, "{label}");
        assert!(verdict.witnesses.is_empty(), "{label}");
        assert!(verdict.clauses.is_empty(), "{label}");

        let p3 = verdict
            .prime_reports
            .iter()
            .find(|r| r.p == 3)
            .unwrap_or_else(|| panic!("{label}: no report at 3"));
        assert_eq!(p3.analysis.shape.primes, shape3, "{label}");
        assert_eq!(p3.outcome, DivisorOutcome::NoWitness, "{label}");
        assert!(
            verdict
                .transcript
                .iter()
                .any(|l| l.starts_with("p=3:") && l.contains("no witness")),
            "{label}: transcript {:?}",
            verdict.transcript
        );

        assert!(fired_clauses(&t).is_empty(), "{label}");
        for table in FamilyTable::applicable(n) {
            let cert = certify_family(&t, table).unwrap();
            assert!(cert.clause.is_none(), "{label} under {}", table.id());
            assert!(
                cert.notes.iter().any(|s| s.contains("no clause fired")),
                "{label} under {}: {:?}",
                table.id(),
                cert.notes
            );
        }
    }
    "x^27+810x+2 and x^10+161x+576: transcripts show no witness at 3, every \
     applicable table reports no clause fired"
        .to_string()
}

// ---------------------------------------------------------------------------
// criterion 8: degree-18 residue-class scan through the CLI, under 30 s
// ---------------------------------------------------------------------------

fn mixed_degree_scan() -> String {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("scan.spec");
    std::fs::write(
        &spec,
        "n = 18\na = -500..500\nb = -500..500\nmodulus = 27\npairs = (9,26),(18,26)\ntheorem = corn11\n",
    )
    .unwrap();

    let started = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_trinogen"))
        .args(["scan", "--spec", spec.to_str().unwrap()])
        .env_remove("TRINOGEN_WORKERS")
        .output()
        .unwrap();
    let elapsed = started.elapsed();
    assert_eq!(out.status.code(), Some(0), "scan failed: {}", String::from_utf8_lossy(&out.stderr));

    let stdout = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = stdout.lines().filter(|l| l.starts_with("row: ")).collect();
    assert_eq!(rows.len(), 2738, "expected the full residue-class box");
    for row in &rows {
        assert!(!row.contains("rejected"), "uncertified row: {row}");
        assert!(row.contains(" not-monogenic "), "row without verdict: {row}");
        assert!(row.contains("corn11(4)"), "clause missing: {row}");
        assert!(row.ends_with("corn11(4)=confirmed"), "engine cross-check missing: {row}");
    }
    assert!(
        stdout.contains("theorem corn11(4) confirmed: 2738"),
        "summary mismatch:\n{stdout}"
    );
    assert!(
        elapsed < Duration::from_secs(30),
        "scan took {elapsed:?}, budget 30 s"
    );
    format!("2738 rows, corn11(4) fired and engine-confirmed on all, in {elapsed:.2?}")
}
