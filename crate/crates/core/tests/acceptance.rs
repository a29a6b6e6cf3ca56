//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use mtc_core::fixedpoint::h8_example;
use mtc_core::groups::{build_group, character_table, Perm, PermGroup};
use mtc_core::orbifold_z2::{
    integrality_report, z2_assemble, z2_closed_form_fusion, z2_labels, OrbifoldLabelZ2,
};
use mtc_core::spectrum::{
    cyclic_phase_identity, dim_square_sum, enumerate_spectrum, genus_blocks, SpectrumGroup,
};
use mtc_core::theories::{builtin_ising, builtin_su2, builtin_trivial};
use mtc_core::{ModularData, ValidatedTheory};
use num_complex::Complex64;

const TOL_MODULAR: f64 = 1e-9;
const TOL_INTEGER: f64 = 1e-6;
const TOL_ORBIFOLD: f64 = 1e-8;
const TOL_DIM: f64 = 1e-9;
const TOL_PHASE: f64 = 1e-8;
const TOL_SUM_RULE: f64 = 1e-6;
const TOL_CHARACTERS: f64 = 1e-8;
const TIME_BUDGET_SECS: f64 = 10.0;

fn builtins() -> Vec<ModularData> {
    let mut v = vec![builtin_trivial(), builtin_ising()];
    v.extend((1..=8).map(|k| builtin_su2(k).unwrap()));
    v
}

fn validated(md: ModularData) -> ValidatedTheory {
    md.validated().expect("built-in theory validates")
}

/// `N_{ab}^c = Σ_x S_{ax} S_{bx} conj(S_{cx}) / S_{1x}`, rounded.
fn verlinde_oracle(md: &ModularData) -> Vec<Vec<Vec<i64>>> {
    let m = md.rank();
    let s = md.s();
    let v = md.vacuum();
    let mut out = vec![vec![vec![0; m]; m]; m];
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                let z: Complex64 = (0..m)
                    .map(|x| s[(a, x)] * s[(b, x)] * s[(c, x)].conj() / s[(v, x)])
                    .sum();
                let r = z.re.round();
                assert!((z - r).norm() < TOL_INTEGER, "N[{a}][{b}][{c}] = {z}");
                assert!(r >= 0.0);
                out[a][b][c] = r as i64;
            }
        }
    }
    out
}

fn phase_residual(x: f64, modulus: f64) -> f64 {
    (Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * x / modulus) - 1.0).norm()
}

fn to_f64(r: num_rational::Rational64) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Number of sectors `(ψ, p, σ)`, by Burnside over conjugation:
/// `|Γ|⁻¹ Σ m^{#orbits⟨p,h,k⟩}` over pairwise commuting triples.
fn sector_count_oracle(g: &PermGroup, m: usize) -> usize {
    let n = g.elements()[0].degree();
    let els = g.elements();
    let commute = |a: &Perm, b: &Perm| a.compose(b) == b.compose(a);
    let mut total = 0usize;
    for a in els {
        for b in els.iter().filter(|b| commute(a, b)) {
            for c in els.iter().filter(|c| commute(a, c) && commute(b, c)) {
                let mut parent: Vec<usize> = (0..n).collect();
                fn find(p: &mut [usize], x: usize) -> usize {
                    if p[x] != x {
                        let r = find(p, p[x]);
                        p[x] = r;
                    }
                    p[x]
                }
                for i in 0..n {
                    for j in [a.apply(i), b.apply(i), c.apply(i)] {
                        let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                        parent[ri] = rj;
                    }
                }
                let orbits = (0..n).filter(|&i| find(&mut parent, i) == i).count();
                total += m.pow(orbits as u32);
            }
        }
    }
    assert_eq!(total % els.len(), 0);
    total / els.len()
}

fn criterion_1() -> String {
    for md in builtins() {
        let name = md.name().to_string();
        let report = md.validate().unwrap();
        for c in &report.checks {
            assert!(c.passed, "{name}: {} failed", c.name);
            assert!(
                c.residual < TOL_MODULAR,
                "{name}: {} residual {}",
                c.name,
                c.residual
            );
        }
        assert_eq!(report.checks.len(), 8);
        let vt = validated(md);
        let n = verlinde_oracle(vt.data());
        let f = vt.fusion();
        let m = vt.rank();
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    assert_eq!(f.get(a, b, c) as i64, n[a][b][c], "{name}");
                    for d in 0..m {
                        let left: i64 = (0..m).map(|x| n[a][b][x] * n[x][c][d]).sum();
                        let right: i64 = (0..m).map(|x| n[b][c][x] * n[a][x][d]).sum();
                        assert_eq!(left, right, "{name}: associativity");
                    }
                }
            }
        }
    }
    "modular suite on trivial, ising, su2 k=1..8".into()
}

fn criterion_2() -> String {
    let orb = z2_assemble(&validated(builtin_su2(1).unwrap())).unwrap();
    assert_eq!(orb.labels.len(), 9);
    assert!((orb.theory.mu() - 16.0).abs() < TOL_DIM * 16.0);
    for name in ["unitarity", "STS-relation"] {
        let c = orb.theory.report().get(name).unwrap();
        assert!(
            c.passed && c.residual < TOL_ORBIFOLD,
            "{name}: {}",
            c.residual
        );
    }
    let r2 = std::f64::consts::SQRT_2;
    let expected = [2.0, 1.0, 1.0, 1.0, 1.0, r2, r2, r2, r2];
    for (d, e) in orb.theory.dims().iter().zip(expected) {
        assert!((d - e).abs() < TOL_DIM, "dim {d} vs {e}");
    }
    "SU(2)_1 orbifold: 9 labels, mu = 16, dims (2; 1x4; sqrt2 x4)".into()
}

fn criterion_3() -> String {
    for md in [builtin_su2(1).unwrap(), builtin_ising()] {
        let vt = validated(md);
        let orb = z2_assemble(&vt).unwrap();
        let closed = z2_closed_form_fusion(&vt).unwrap();
        let oracle = verlinde_oracle(orb.theory.data());
        let m = orb.labels.len();
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    assert_eq!(closed.get(a, b, c) as i64, oracle[a][b][c]);
                    assert_eq!(closed.get(a, b, c), orb.theory.fusion().get(a, b, c));
                }
            }
        }
    }
    "Verlinde on orbifold data equals closed-form fusion (SU(2)_1, Ising)".into()
}

fn criterion_4() -> String {
    let mut theories = vec![builtin_ising()];
    theories.extend((1..=4).map(|k| builtin_su2(k).unwrap()));
    let mut rows = 0;
    for md in theories {
        let vt = validated(md);
        let m = vt.rank();
        let report = integrality_report(&vt);
        assert_eq!(report.len(), 2 * m * m * m);
        for r in report {
            let near = r.value.re.round();
            assert!((r.value - near).norm() < TOL_INTEGER, "{:?}", r);
            assert!(near >= 0.0, "{:?}", r);
            assert!(r.integral && r.nonnegative);
            rows += 1;
        }
    }
    format!("integrality of {rows} sign/triple values for Ising, su2 k<=4")
}

fn criterion_5() -> String {
    let mut worst = 0.0f64;
    for md in builtins() {
        let vt = validated(md);
        let c = to_f64(vt.central_charge());
        worst = worst.max(phase_residual(vt.c0() - c, 4.0));
        let orb = z2_assemble(&vt).unwrap();
        worst = worst.max(phase_residual(orb.theory.c0() - 2.0 * vt.c0(), 8.0));
    }
    assert!(worst < TOL_PHASE, "worst phase residual {worst}");
    format!("central-charge congruences, worst residual {worst:.1e}")
}

fn criterion_6() -> String {
    for (md, expected) in [(builtin_ising(), 27), (builtin_su2(1).unwrap(), 8)] {
        let vt = validated(md);
        let orb = z2_assemble(&vt).unwrap();
        let rows = cyclic_phase_identity(&orb, &vt);
        assert_eq!(rows.len(), expected);
        assert!(rows.iter().all(|r| r.holds));
        let f = orb.theory.fusion();
        let diag = |lambda, eps| orb.index_of(OrbifoldLabelZ2::Diag { lambda, eps }).unwrap();
        let m = vt.rank();
        for l in 0..m {
            for u in 0..m {
                for d in 0..m {
                    let lhs = f.get(diag(l, 0), diag(u, 0), diag(d, 0)) as i64
                        - f.get(diag(l, 0), diag(u, 0), diag(d, 1)) as i64;
                    assert_eq!(lhs, vt.fusion().get(l, u, d) as i64);
                }
            }
        }
    }
    "N^(d0) - N^(d1) = N for Ising and SU(2)_1".into()
}

fn criterion_7() -> String {
    let start = Instant::now();
    let mut cases = 0;
    for md in builtins() {
        let vt = validated(md);
        let m = vt.rank();
        for (group, max_n) in [(SpectrumGroup::Full, 4), (SpectrumGroup::Cyclic, 6)] {
            for n in 2..=max_n {
                let g = group.build(n).unwrap();
                let order = g.order() as f64;
                let entries = enumerate_spectrum(&vt, n, group).unwrap();
                let expected = order * order * vt.mu().powi(n as i32);
                let got = dim_square_sum(&entries);
                assert!(
                    ((got - expected) / expected).abs() < TOL_SUM_RULE,
                    "{} n={n} {group}: {got} vs {expected}",
                    vt.name()
                );
                if n <= 4 {
                    assert_eq!(entries.len(), sector_count_oracle(&g, m));
                }
                cases += 1;
            }
        }
    }
    let vt = validated(builtin_su2(1).unwrap());
    let entries = enumerate_spectrum(&vt, 3, SpectrumGroup::Full).unwrap();
    assert_eq!(entries.len(), 24);
    assert!((dim_square_sum(&entries) - 288.0).abs() < TOL_SUM_RULE * 288.0);
    let secs = start.elapsed().as_secs_f64();
    assert!(secs < TIME_BUDGET_SECS, "took {secs:.2}s");
    format!("sum rules over {cases} cases, SU(2)_1 n=3 full: 24 sectors, 288 ({secs:.2}s)")
}

fn criterion_8() -> String {
    for md in builtins() {
        let vt = validated(md);
        let orb = z2_assemble(&vt).unwrap();
        let key = |family: u8, d: f64| (family, (d * 1e6).round() as i64);
        let mut from_spectrum: Vec<(u8, i64)> = enumerate_spectrum(&vt, 2, SpectrumGroup::Full)
            .unwrap()
            .iter()
            .map(|e| {
                let family = if !e.seed.p.is_identity() {
                    2
                } else if e.seed.psi[0] == e.seed.psi[1] {
                    1
                } else {
                    0
                };
                key(family, e.dim)
            })
            .collect();
        let mut from_orbifold: Vec<(u8, i64)> = z2_labels(&vt)
            .iter()
            .zip(orb.theory.dims())
            .map(|(l, &d)| {
                let family = match l {
                    OrbifoldLabelZ2::Pair { .. } => 0,
                    OrbifoldLabelZ2::Diag { .. } => 1,
                    OrbifoldLabelZ2::Twist { .. } => 2,
                };
                key(family, d)
            })
            .collect();
        from_spectrum.sort();
        from_orbifold.sort();
        assert_eq!(from_spectrum, from_orbifold, "{}", vt.name());
    }
    "n=2 spectrum matches orbifold labels in family, count and dimension".into()
}

fn criterion_9() -> String {
    for md in builtins() {
        let vt = validated(md);
        let m = vt.rank();
        let f = vt.fusion();
        let conj = vt.conjugation();
        for a in 0..m {
            for b in 0..m {
                let two = genus_blocks(vt.data(), &[a, b], 0).unwrap();
                assert_eq!(two, u64::from(conj[a] == b));
                for c in 0..m {
                    let three = genus_blocks(vt.data(), &[a, b, c], 0).unwrap();
                    assert_eq!(three, f.get(a, b, conj[c]) as u64);
                    let torus = genus_blocks(vt.data(), &[a, b, c], 1).unwrap();
                    let trace: u64 = (0..m)
                        .flat_map(|x| (0..m).flat_map(move |y| (0..m).map(move |z| (x, y, z))))
                        .map(|(x, y, z)| {
                            f.get(a, x, y) as u64 * f.get(b, y, z) as u64 * f.get(c, z, x) as u64
                        })
                        .sum();
                    assert_eq!(torus, trace);
                }
            }
        }
    }
    "genus blocks: g=0 two-point = C, g=0/g=1 three-point from fusion ring".into()
}

fn criterion_10() -> String {
    for k1 in 1..=8u32 {
        let counts = h8_example(k1).unwrap();
        for (sigma, count) in counts {
            let split = if k1 % 2 == 1 {
                sigma == 1 || sigma == -1
            } else {
                sigma == 0 || sigma == 2
            };
            assert_eq!(count, if split { 2 } else { 1 }, "k1={k1} sigma={sigma}");
        }
    }
    "H8 fixed-point resolution counts for k1 = 1..8".into()
}

fn criterion_11() -> String {
    for (spec, dims) in [
        ("sym:3", vec![1, 1, 2]),
        ("sym:4", vec![1, 1, 2, 3, 3]),
        ("quaternion", vec![1, 1, 1, 1, 2]),
    ] {
        let g = build_group(spec).unwrap();
        let t = character_table(&g).unwrap();
        assert_eq!(t.dims(), dims.as_slice(), "{spec}");
        assert!(t.orthogonality_residual() < TOL_CHARACTERS);
        let sizes = t.class_sizes();
        let order = g.order() as f64;
        let r = t.num_irreps();
        for i in 0..r {
            for j in 0..r {
                let inner: Complex64 = (0..t.num_classes())
                    .map(|k| t.value(i, k) * t.value(j, k).conj() * sizes[k] as f64)
                    .sum::<Complex64>()
                    / order;
                let want = if i == j { 1.0 } else { 0.0 };
                assert!(
                    (inner - want).norm() < TOL_CHARACTERS,
                    "{spec} <{i},{j}> = {inner}"
                );
            }
        }
    }
    "character tables of P3, P4, H8".into()
}

fn main() -> ExitCode {
    let criteria: [(u32, fn() -> String); 11] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
        (11, criterion_11),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (n, run) in criteria {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run));
        let took = t.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("PASS criterion {n} [{took:.2}s]: {msg}"),
            Err(e) => {
                let why = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                println!("FAIL criterion {n} [{took:.2}s]: {why}");
                failed += 1;
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    println!(
        "acceptance: {} passed, {failed} failed in {secs:.2}s",
        11 - failed
    );
    if secs >= TIME_BUDGET_SECS {
        println!("FAIL total time {secs:.2}s exceeds {TIME_BUDGET_SECS}s");
        return ExitCode::FAILURE;
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
