//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//! Everything is exact; there are no tolerances anywhere.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use milnor_cli::fixtures;
use milnor_cli::golden::check_catalog_row;
use milnor_core::assembler::{
    assemble_e2, euler_conservation, node_puncture_enrichment, solve_d2, solve_scenario,
    Constraint, DegenerationScenario, DegenerationType, FiberHodge, S0Point, StratumSpec,
};
use milnor_core::curves::{kulikov_e2, PunctureKind};
use milnor_core::diagram::to_hodge_deligne;
use milnor_core::local::{brieskorn_pham, torsion_exponents_refined};
use milnor_core::rational::{rat, Rational};
use milnor_core::spectrum::{
    convolve_paired, star, vertical_spectrum, EigenEntry, Spectrum, WeightedSpectrum,
};
use milnor_core::sss::{jk_spectrum, jk_summary, slc_catalog, sss_slc, SlcType};
use milnor_core::symanzik::{doublebox_report, KinematicCase};

type Check = Result<(), String>;

fn report(criterion: u32, name: &str, result: Check) {
    match &result {
        Ok(()) => println!("ACCEPTANCE criterion {criterion} ({name}): PASS"),
        Err(e) => println!("ACCEPTANCE criterion {criterion} ({name}): FAIL — {e}"),
    }
    if let Err(e) = result {
        panic!("criterion {criterion} ({name}) failed: {e}");
    }
}

fn expect<T: PartialEq + std::fmt::Debug>(label: &str, got: T, want: T) -> Check {
    if got == want {
        Ok(())
    } else {
        Err(format!("{label}: got {got:?}, want {want:?}"))
    }
}

#[test]
fn criterion_1_catalog_reproduction() {
    let run = || -> Check {
        for r in 1..=6u64 {
            let yomdin = if r >= 2 {
                brieskorn_pham(&[2, 2, r as u32]).map_err(|e| e.to_string())?
            } else {
                WeightedSpectrum::new()
            };
            check_catalog_row(&SlcType::AInf, r, &yomdin)?;
        }
        let rows: Vec<(SlcType, u64, &str)> = vec![
            (SlcType::DInf, 4, "yomdin_d_inf_r4"),
            (SlcType::T2InfInf, 5, "yomdin_t_2_inf_inf_r5"),
            (SlcType::T2QInf { q: 3 }, 7, "yomdin_t_2_3_inf_r7"),
            (SlcType::T2QInf { q: 4 }, 5, "yomdin_t_2_4_inf_r5"),
            (SlcType::T2QInf { q: 5 }, 4, "yomdin_t_2_5_inf_r4"),
            (SlcType::TInfInfInf, 4, "yomdin_t_inf_inf_inf_r4"),
            (SlcType::TPInfInf { p: 3 }, 4, "yomdin_t_3_inf_inf_r4"),
            (SlcType::TPInfInf { p: 4 }, 3, "yomdin_t_4_inf_inf_r3"),
            (SlcType::TPQInf { p: 3, q: 3 }, 4, "yomdin_t_3_3_inf_r4"),
            (SlcType::TPQInf { p: 3, q: 4 }, 3, "yomdin_t_3_4_inf_r3"),
            (SlcType::TPQInf { p: 4, q: 5 }, 2, "yomdin_t_4_5_inf_r2"),
        ];
        for (t, r, fixture) in rows {
            let yomdin = fixtures::weighted_spectrum(fixture).map_err(|e| e.to_string())?;
            check_catalog_row(&t, r, &yomdin).map_err(|e| format!("{t:?}: {e}"))?;
        }
        Ok(())
    };
    report(1, "catalog rows, exact", run());
}

#[test]
fn criterion_2_worked_example_end_to_end() {
    let run = || -> Check {
        let limit =
            fixtures::eigen_entries("quadruple_point#limit_entries").map_err(|e| e.to_string())?;
        let naive =
            fixtures::eigen_entries("quadruple_point#naive_entries").map_err(|e| e.to_string())?;
        let yomdin =
            fixtures::weighted_spectrum("quadruple_point#yomdin").map_err(|e| e.to_string())?;
        let spcon = fixtures::weighted_spectrum("quadruple_point#expected_convolution")
            .map_err(|e| e.to_string())?;
        let diff = fixtures::weighted_spectrum("quadruple_point#expected_difference")
            .map_err(|e| e.to_string())?;

        let conv = convolve_paired(&vertical_spectrum(&limit, 1, 7).map_err(|e| e.to_string())?);
        expect("term-for-term convolution", conv == spcon, true)?;
        expect("difference", (&yomdin - &conv) == diff, true)?;

        // negative control from the fiberwise (non-limit) data
        let bad = convolve_paired(&vertical_spectrum(&naive, 1, 7).map_err(|e| e.to_string())?);
        let expected_bad =
            fixtures::weighted_spectrum("quadruple_point#expected_naive_convolution")
                .map_err(|e| e.to_string())?;
        expect("documented wrong weights", bad == expected_bad, true)?;
        // the blue positions move from weight 1 to 2 resp. 3 to 2
        expect("blue term moved", bad.multiplicity(&(rat(9, 14), 1)), 0)?;
        expect(
            "blue term at wrong weight",
            bad.multiplicity(&(rat(9, 14), 2)),
            1,
        )?;
        expect("blue tail moved", bad.multiplicity(&(rat(33, 14), 3)), 0)?;
        expect(
            "blue tail at wrong weight",
            bad.multiplicity(&(rat(33, 14), 2)),
            1,
        )?;
        expect("first term weight", bad.multiplicity(&(rat(1, 2), 1)), 1)?;
        expect("split middle term", bad.multiplicity(&(rat(3, 2), 1)), 1)?;
        Ok(())
    };
    report(2, "quadruple-point example", run());
}

#[test]
fn criterion_3_j_series() {
    let run = || -> Check {
        for kappa in 1..=8u64 {
            let s = jk_spectrum(kappa).map_err(|e| e.to_string())?;
            let summary = jk_summary(kappa).map_err(|e| e.to_string())?;
            expect(
                &format!("kappa {kappa} total"),
                s.total_multiplicity(),
                3 * kappa as i64 - 2,
            )?;
            let d = to_hodge_deligne(&s).map_err(|e| e.to_string())?;
            let mass = |pp: i64, qq: i64| -> u64 {
                d.iter()
                    .filter(|(&(p, q, _), _)| (p, q) == (pp, qq))
                    .map(|(_, &m)| m)
                    .sum()
            };
            expect(&format!("kappa {kappa} h20"), mass(2, 0), (kappa - 1) / 2)?;
            expect(
                &format!("kappa {kappa} h22"),
                mass(2, 2),
                if kappa % 2 == 0 { 1 } else { 0 },
            )?;
            expect(
                &format!("kappa {kappa} summary h20"),
                summary.h20,
                (kappa - 1) / 2,
            )?;
        }
        for kappa in 1..=4u64 {
            let r = 3 * kappa;
            let beta = if kappa % 2 == 1 { rat(1, 2) } else { rat(0, 1) };
            let yomdin = brieskorn_pham(&[2, 3, r as u32]).map_err(|e| e.to_string())?;
            let out = sss_slc(&WeightedSpectrum::new(), &yomdin, r, &[beta])
                .map_err(|e| e.to_string())?;
            let jk = jk_spectrum(kappa).map_err(|e| e.to_string())?;
            expect(
                &format!("kappa {kappa} plain"),
                out.sigma2.forget_weights() == jk.forget_weights(),
                true,
            )?;
            // weighted agreement, including the weight-4 invariant class for
            // even kappa
            expect(&format!("kappa {kappa} weighted"), out.sigma2 == jk, true)?;
            if kappa % 2 == 0 {
                expect(
                    &format!("kappa {kappa} invariant class"),
                    out.sigma2.multiplicity(&(rat(2, 1), 4)),
                    1,
                )?;
            }
        }
        Ok(())
    };
    report(3, "J series", run());
}

#[test]
fn criterion_4_triangulations() {
    let run = || -> Check {
        let r = kulikov_e2(4, 6, 4).map_err(|e| e.to_string())?;
        expect("tetrahedral h2", r.h2_x0, 23)?;
        expect("tetrahedral h1_van", r.h1_van.total_multiplicity(), 3)?;
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..50 {
            let f = rng.gen_range(4..=20u64);
            let v = rng.gen_range(4..=40u64);
            let e = v + f - 2;
            let rep = kulikov_e2(f, e, v).map_err(|err| format!("F={f},V={v}: {err}"))?;
            expect(&format!("F={f},V={v}: h2"), rep.h2_x0, 19 + f)?;
            expect(&format!("F={f},V={v}: d2"), rep.d2_rank, v - 1)?;
        }
        Ok(())
    };
    report(4, "triangulation bookkeeping", run());
}

fn assemble_fixture(name: &str) -> Result<DegenerationScenario, String> {
    let v = fixtures::value(name).map_err(|e| e.to_string())?;
    let sc: milnor_cli::scenario::Scenario =
        serde_json::from_value(v).map_err(|e| e.to_string())?;
    match sc.kind {
        milnor_cli::scenario::ScenarioKind::Assemble { scenario } => Ok(scenario),
        _ => Err(format!("{name} is not an assembly scenario")),
    }
}

#[test]
fn criterion_5_quartic_scenarios() {
    let run = || -> Check {
        // four pinch points, smooth total space
        let sc = assemble_fixture("scenario_pinch_quartic_case_a")?;
        let sol = solve_scenario(&sc).map_err(|e| e.to_string())?;
        expect(
            "case a: E2 s0 cell",
            sol.e2.s0_cell.multiplicity(1, 1, rat(1, 2)),
            4,
        )?;
        expect(
            "case a: E2 s0 cell total",
            sol.e2.s0_cell.total_multiplicity(),
            4,
        )?;
        expect(
            "case a: weight-one pair",
            sol.e2.curve_cells[1].multiplicity(2, 1, rat(0, 1)),
            1,
        )?;
        expect(
            "case a: curve cell total",
            sol.e2.curve_cells[1].total_multiplicity(),
            2,
        )?;
        expect(
            "case a: type",
            sol.tables.degeneration_type,
            Some(DegenerationType::II),
        )?;
        let t = sol
            .tables
            .evaluate(&BTreeMap::new())
            .map_err(|e| e.to_string())?;
        let x0 = &t["h_x0"][&2];
        expect(
            "case a: h2(X0) diagram",
            (
                x0.multiplicity(1, 0, rat(0, 1)),
                x0.multiplicity(0, 1, rat(0, 1)),
                x0.multiplicity(1, 1, rat(0, 1)),
                x0.total_multiplicity(),
            ),
            (1, 1, 14, 16),
        )?;
        let lim = &t["h_lim"][&2];
        expect(
            "case a: limit diagram",
            (
                lim.multiplicity(2, 1, rat(0, 1)),
                lim.multiplicity(1, 2, rat(0, 1)),
                lim.multiplicity(1, 1, rat(0, 1)),
                lim.multiplicity(1, 1, rat(1, 2)),
                lim.total_multiplicity(),
            ),
            (1, 1, 14, 4, 22),
        )?;
        expect("case a: strings", lim.arrows().len(), 2)?;

        let sc_b = assemble_fixture("scenario_pinch_quartic_case_b")?;
        let sol_b = solve_scenario(&sc_b).map_err(|e| e.to_string())?;
        expect(
            "case b: type",
            sol_b.tables.degeneration_type,
            Some(DegenerationType::I),
        )?;

        // pinch-point collisions
        for (name, want) in [
            ("scenario_collide_ii", DegenerationType::III),
            ("scenario_collide_iii", DegenerationType::I),
            ("scenario_collide_iii_prime", DegenerationType::III),
            ("scenario_collide_iv", DegenerationType::I),
        ] {
            let sc = assemble_fixture(name)?;
            let sol = solve_scenario(&sc).map_err(|e| e.to_string())?;
            expect(
                &format!("{name} type"),
                sol.tables.degeneration_type,
                Some(want),
            )?;
            // the bad points feed their local diagrams into the second page
            let mut local = milnor_core::diagram::HodgeDeligneDiagram::new();
            for p in &sc.s0_points {
                let s = p.spectrum().map_err(|e| e.to_string())?;
                local = local.merge(&to_hodge_deligne(&s).map_err(|e| e.to_string())?);
            }
            expect(&format!("{name} local diagrams"), sol.e2.s0_cell, local)?;
        }

        // eight nodes on the conic
        let sc = assemble_fixture("scenario_nodal_conic")?;
        let sol = solve_scenario(&sc).map_err(|e| e.to_string())?;
        expect(
            "nodal: rho_a + rho_b",
            sol.discrepancy.middle_rank.as_constant(),
            Some(8),
        )?;
        expect("nodal: equality case", sol.discrepancy.equality_case, true)?;
        let sc = assemble_fixture("scenario_nodal_conic_resolved")?;
        let sol = solve_scenario(&sc).map_err(|e| e.to_string())?;
        expect("nodal: rho_b", sol.discrepancy.rho_b.as_constant(), Some(0))?;
        expect("nodal: rho_a", sol.discrepancy.rho_a.as_constant(), Some(8))?;
        Ok(())
    };
    report(5, "quartic-surface scenarios", run());
}

#[test]
fn criterion_6_double_box() {
    let run = || -> Check {
        for seed in [1u64, 11, 23] {
            let rep = doublebox_report(KinematicCase::DGt4, seed).map_err(|e| e.to_string())?;
            expect(&format!("seed {seed}: ker"), rep.ev.dim_ker_ev, 9)?;
            expect(&format!("seed {seed}: a"), rep.ev.a, 3)?;
            expect(&format!("seed {seed}: rank V"), rep.hodge.rank_v, 20)?;
            expect(&format!("seed {seed}: h22"), rep.hodge.h22_h5_x0, 9)?;
            expect(&format!("seed {seed}: h32"), rep.hodge.h32_h5_x0, 2)?;
            expect(&format!("seed {seed}: b"), rep.hodge.b, 2)?;
            expect(&format!("seed {seed}: f-level"), rep.hodge.f_level, 1)?;
        }
        for seed in [1u64, 11, 23] {
            let rep = doublebox_report(KinematicCase::DEq4, seed).map_err(|e| e.to_string())?;
            expect(&format!("seed {seed}: a"), rep.ev.a, 4)?;
            expect(&format!("seed {seed}: h22"), rep.hodge.h22_h5_x0, 10)?;
            expect(&format!("seed {seed}: h32"), rep.hodge.h32_h5_x0, 1)?;
            expect(&format!("seed {seed}: b"), rep.hodge.b, 1)?;
            expect(
                &format!("seed {seed}: nodes"),
                rep.singular_locus.nodes.len(),
                2,
            )?;
            for n in &rep.singular_locus.nodes {
                expect(
                    &format!("seed {seed}: node checks"),
                    (
                        n.jacobian_vanishes,
                        n.first_polynomial_vanishes,
                        n.z3_nonzero,
                    ),
                    (true, true, true),
                )?;
            }
            expect(&format!("seed {seed}: f-level"), rep.hodge.f_level, 1)?;
        }
        Ok(())
    };
    report(6, "double box, three seeds per case", run());
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(-6..=6), rng.gen_range(1..=6))
}

fn random_weighted(rng: &mut ChaCha8Rng) -> WeightedSpectrum {
    let mut s = WeightedSpectrum::new();
    for _ in 0..rng.gen_range(0..4) {
        s.add_entry(
            (random_rational(rng), rng.gen_range(-2..=4)),
            rng.gen_range(-3..=3),
        );
    }
    s
}

fn random_eigen_entries(rng: &mut ChaCha8Rng) -> Vec<EigenEntry> {
    (0..rng.gen_range(1..4))
        .map(|_| {
            let beta = rat(rng.gen_range(0..4), 4);
            EigenEntry::new(
                random_rational(rng),
                rng.gen_range(0..4),
                beta,
                rng.gen_range(1..3),
            )
            .unwrap()
        })
        .collect()
}

#[test]
fn criterion_7_property_suites() {
    let run = || -> Check {
        let mut rng = ChaCha8Rng::seed_from_u64(7);

        // convolution commutativity and associativity, forget homomorphism,
        // star bounds: 1000 random triples
        for i in 0..1000 {
            let a = random_weighted(&mut rng);
            let b = random_weighted(&mut rng);
            let c = random_weighted(&mut rng);
            expect(
                &format!("commutativity #{i}"),
                a.convolve(&b) == b.convolve(&a),
                true,
            )?;
            expect(
                &format!("associativity #{i}"),
                a.convolve(&b).convolve(&c) == a.convolve(&b.convolve(&c)),
                true,
            )?;
            expect(
                &format!("forget homomorphism #{i}"),
                a.convolve(&b).forget_weights() == a.forget_weights().convolve(&b.forget_weights()),
                true,
            )?;
            let x = (random_rational(&mut rng), rng.gen_range(-2..=4));
            let y = (random_rational(&mut rng), rng.gen_range(-2..=4));
            let s = star(x, y);
            let added = s.1 - x.1 - y.1;
            expect(
                &format!("pairing bound #{i}"),
                (0..=2).contains(&added),
                true,
            )?;
            expect(&format!("star identity #{i}"), star(x, (rat(0, 1), 0)), x)?;
        }

        // the paired convolution respects forgetting weights too
        for i in 0..200 {
            let entries = random_eigen_entries(&mut rng);
            let mu = rng.gen_range(1..3);
            let r = rng.gen_range(1..5);
            let terms = vertical_spectrum(&entries, mu, r).map_err(|e| e.to_string())?;
            let conv = convolve_paired(&terms);
            let expected_total: i64 = entries
                .iter()
                .map(|e| e.multiplicity as i64 * (mu * r) as i64)
                .sum();
            expect(
                &format!("paired total #{i}"),
                conv.total_multiplicity(),
                expected_total,
            )?;
        }

        // p/q symmetry of every catalog output
        let mut catalog: Vec<SlcType> = vec![
            SlcType::AInf,
            SlcType::DInf,
            SlcType::T2InfInf,
            SlcType::TInfInfInf,
        ];
        for q in 3..=12 {
            catalog.push(SlcType::T2QInf { q });
        }
        for p in 3..=12 {
            catalog.push(SlcType::TPInfInf { p });
        }
        for p in 3..=7u64 {
            for q in p..=9 {
                catalog.push(SlcType::TPQInf { p, q });
            }
        }
        for kappa in 1..=12 {
            catalog.push(SlcType::JKappaInf { kappa });
        }
        for t in &catalog {
            let row = slc_catalog(t).map_err(|e| e.to_string())?;
            for s in [&row.sigma1, &row.sigma2] {
                if s.is_empty() {
                    continue;
                }
                let d = to_hodge_deligne(s).map_err(|e| e.to_string())?;
                expect(&format!("{t:?} symmetry"), d.check_pq_symmetry(), true)?;
            }
        }

        // Euler-characteristic conservation on assembled scenarios, fixture
        // and randomized
        for name in [
            "scenario_pinch_quartic_case_a",
            "scenario_collide_ii",
            "scenario_collide_iii",
            "scenario_collide_iii_prime",
            "scenario_collide_iv",
            "scenario_nodal_conic",
        ] {
            let sc = assemble_fixture(name)?;
            let enriched = node_puncture_enrichment(&sc);
            let table = assemble_e2(&enriched).map_err(|e| e.to_string())?;
            let solved = solve_d2(&table, &enriched.constraints, &enriched.fiber)
                .map_err(|e| e.to_string())?;
            expect(
                &format!("{name} Euler"),
                euler_conservation(&table, &solved).map_err(|e| e.to_string())?,
                true,
            )?;
        }
        for i in 0..40 {
            // draw only configurations a K-trivial fiber admits: at most one
            // point with a (2,0)-class, and a (2,2)-excess only where the
            // curve row can cancel it
            let heavy: Option<u64> = match rng.gen_range(0..3) {
                0 => None,
                1 => Some(3),
                _ => Some(4),
            };
            // Gr_F^2 budget: pure pairs contribute a (2,1), each J_2 a (2,2)
            // (cancellable only when the local system is trivial), J_3/J_4 a
            // (2,0); the total after cancellation must fit under h^{2,0} = 1
            let (pinch, j2) = match heavy {
                Some(4) => (0, 0),
                Some(_) => (1, 0),
                None => match rng.gen_range(0..4) {
                    0 => (0, rng.gen_range(0..=2)),
                    1 => (2, rng.gen_range(0..=1)),
                    2 => (4, 0),
                    _ => (2, 0),
                },
            };
            let nodes = rng.gen_range(0..=8u64);
            let mut punctures = vec![PunctureKind::Pinch; pinch];
            punctures.extend(vec![PunctureKind::JKappa { kappa: 2 }; j2]);
            let mut s0: Vec<S0Point> = (0..pinch)
                .map(|_| S0Point::Catalog { slc: SlcType::DInf })
                .collect();
            s0.extend((0..j2).map(|_| S0Point::Catalog {
                slc: SlcType::JKappaInf { kappa: 2 },
            }));
            if let Some(kappa) = heavy {
                punctures.push(PunctureKind::JKappa { kappa });
                s0.push(S0Point::Catalog {
                    slc: SlcType::JKappaInf { kappa },
                });
            }
            let sc = DegenerationScenario {
                name: format!("random_{i}"),
                n: 2,
                strata: vec![StratumSpec {
                    genus: 0,
                    punctures,
                    total_space_nodes: nodes,
                }],
                s0_points: s0,
                fiber: FiberHodge::surface(1, 20),
                components: 1,
                constraints: vec![Constraint::FiberCap],
            };
            let enriched = node_puncture_enrichment(&sc);
            let table = assemble_e2(&enriched).map_err(|e| e.to_string())?;
            let solved = solve_d2(&table, &enriched.constraints, &enriched.fiber)
                .map_err(|e| e.to_string())?;
            expect(
                &format!("random scenario #{i} Euler"),
                euler_conservation(&table, &solved).map_err(|e| e.to_string())?,
                true,
            )?;
        }

        // independence of the auxiliary exponent for the transverse-node row
        let sigma1 = WeightedSpectrum::singleton(rat(1, 1), 2);
        let mut outputs = Vec::new();
        for r in 1..=6u64 {
            let yomdin = if r >= 2 {
                brieskorn_pham(&[2, 2, r as u32]).map_err(|e| e.to_string())?
            } else {
                WeightedSpectrum::new()
            };
            let out = sss_slc(&sigma1, &yomdin, r, &[rat(0, 1)]).map_err(|e| e.to_string())?;
            outputs.push(out.sigma2);
        }
        expect(
            "r independence",
            outputs.iter().all(|s| s == &outputs[0]),
            true,
        )?;
        expect("transverse node result", outputs[0].is_empty(), true)?;

        // torsion exponents of the cusp-with-smooth-branch spectrum
        let d4 = Spectrum::from_entries([(rat(2, 3), 1), (rat(1, 1), 2), (rat(4, 3), 1)]);
        let t = torsion_exponents_refined(&d4, 1, 3).map_err(|e| e.to_string())?;
        expect("torsion exponents", t.exponents, vec![2])?;

        // join-multiplicity oracle: brute-force enumeration
        for i in 0..30 {
            let k = rng.gen_range(1..=3);
            let exps: Vec<u32> = (0..k).map(|_| rng.gen_range(2..=7)).collect();
            let s = brieskorn_pham(&exps).map_err(|e| e.to_string())?;
            let mut sums = vec![rat(0, 1)];
            for &a in &exps {
                let mut next = Vec::new();
                for &base in &sums {
                    for j in 1..a as i64 {
                        next.push(base + rat(j, a as i64));
                    }
                }
                sums = next;
            }
            expect(
                &format!("join enumeration #{i} ({exps:?})"),
                s.total_multiplicity() as usize,
                sums.len(),
            )?;
            let milnor: i64 = exps.iter().map(|&a| a as i64 - 1).product();
            expect(
                &format!("multiplicity #{i}"),
                s.total_multiplicity(),
                milnor,
            )?;
        }
        Ok(())
    };
    report(7, "property suites", run());
}
