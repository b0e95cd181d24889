//! Acceptance criteria, one line each. Exits non-zero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::Command;

use num_complex::Complex64;

use pqc_cli::document::Document;
use pqc_core::channels::Side;
use pqc_core::sampling::{random_density, random_pure_state, random_unitary};
use pqc_core::{
    bell_basis_unitary, build_classical_otp, build_example_pqc, build_pauli_otp, build_real_otp,
    certify_entropy_bounds, certify_key_bound, certify_mixed_target, completely_mixed, decrypt, encrypt,
    estimate_eve_state, key_entropy, lift_to_classical, search_three_term_depolarizers, shannon_entropy,
    verify_pqc, von_neumann_entropy, Channel64, ComplexMatrix, Density64, DensityMatrix, Matrix64,
    MixedUnitaryChannel, Pqc64, PqcInstance, Pure64, PureState, SplitMix64, StateSet, Term,
};

const PAD_DEVIATION: f64 = 1e-12;
const STATE_TOL: f64 = 1e-10;
const ENTROPY_TOL: f64 = 1e-9;
const BELL_OVERLAP: f64 = 1e-12;
const ROUND_TRIP: f64 = 1e-12;
const EVE_SAMPLED: f64 = 0.05;
const SEARCH_DISTANCE: f64 = 1e-3;
const SERIAL_TOL: f64 = 1e-15;
const PADDED_GAP: f64 = 0.9;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn dist(a: &Matrix64, b: &Matrix64) -> f64 {
    a.max_abs_diff(b).unwrap()
}

/// `−x log₂ x − (1 − x) log₂(1 − x)`.
fn binary_entropy(x: f64) -> f64 {
    -x * x.log2() - (1.0 - x) * (1.0 - x).log2()
}

fn conjugated_pads(n: usize, count: usize, rng: &mut SplitMix64) -> Vec<(Side, Pqc64)> {
    let pad = build_pauli_otp::<f64>(n).unwrap();
    let mut out = Vec::new();
    for side in [Side::Left, Side::Right] {
        for _ in 0..count {
            let v = random_unitary(rng, 1 << n);
            let ch = pad.channel().conjugate_terms(&v, side).unwrap();
            out.push((side, PqcInstance::new(StateSet::FullHilbert(n), ch, completely_mixed(1 << n)).unwrap()));
        }
    }
    out
}

fn constructed() -> Vec<(String, Pqc64)> {
    let mut out = Vec::new();
    for n in 1..=3 {
        out.push((format!("pauli-otp {n}"), build_pauli_otp(n).unwrap()));
        out.push((format!("real-otp {n}"), build_real_otp(n).unwrap()));
        out.push((format!("classical-otp {n}"), build_classical_otp(n).unwrap()));
    }
    out.push(("example".into(), build_example_pqc().unwrap()));
    for n in 1..=2 {
        out.push((format!("lifted {n}"), lift_to_classical(&build_pauli_otp(n).unwrap()).unwrap()));
    }
    out
}

fn pauli_pad_privacy() -> Check {
    let mut rng = SplitMix64::new(1);
    let mut worst = 0.0f64;
    let mut worst_random = 0.0f64;
    for n in 1..=3 {
        let inst = build_pauli_otp::<f64>(n).unwrap();
        let r = ok(verify_pqc(&inst, PAD_DEVIATION))?;
        ensure(r.ok, || format!("n={n}: {r}"))?;
        worst = worst.max(r.worst_deviation);
        let mixed = completely_mixed::<f64>(1 << n);
        for _ in 0..100 {
            let phi = random_pure_state::<f64>(&mut rng, 1 << n);
            let out = ok(inst.channel().apply(&phi.density()))?;
            worst_random = worst_random.max(dist(out.matrix(), mixed.matrix()));
        }
    }
    ensure(worst <= PAD_DEVIATION, || format!("worst {worst:e}"))?;
    ensure(worst_random <= STATE_TOL, || format!("random states {worst_random:e}"))?;
    Ok(format!("n=1..3 worst {worst:e}, 300 random states worst {worst_random:e}"))
}

fn key_size_pairing() -> Check {
    let mut rng = SplitMix64::new(2);
    let mut conjugations = 0;
    for n in 1..=3 {
        let pad = build_pauli_otp::<f64>(n).unwrap();
        let h = key_entropy(&pad);
        ensure(h == 2.0 * n as f64, || format!("n={n}: H(p) = {h}"))?;
        let expect = 4f64.powi(-(n as i32));
        let mut instances = vec![(None, pad)];
        instances.extend(conjugated_pads(n, 10, &mut rng).into_iter().map(|(s, i)| (Some(s), i)));
        for (side, inst) in instances {
            let r = ok(certify_key_bound(&inst, 1e-9))?;
            ensure(r.ok, || format!("n={n} {side:?}: {r}"))?;
            ensure((r.max_p - expect).abs() <= 1e-12, || format!("n={n} {side:?}: max_p {}", r.max_p))?;
            ensure(r.term_count >= 1 << (2 * n), || format!("n={n}: N = {}", r.term_count))?;
            conjugations += side.is_some() as usize;
        }
    }
    Ok(format!("H(p) = 2n and max_p = 4^-n for n=1..3 and {conjugations} conjugated pads"))
}

fn real_pad() -> Check {
    for n in 1..=3 {
        let inst = build_real_otp::<f64>(n).unwrap();
        let r = ok(verify_pqc(&inst, STATE_TOL))?;
        ensure(r.ok, || format!("n={n}: {r}"))?;
        let h = key_entropy(&inst);
        ensure(h == n as f64, || format!("n={n}: H(p) = {h}"))?;
    }
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let plus_i = ok(PureState::new(vec![Complex64::new(h, 0.0), Complex64::new(0.0, h)]))?;
    let base = build_real_otp::<f64>(1).unwrap();
    let listed = ok(base.with_states(StateSet::ExplicitList(vec![plus_i])))?;
    let r = ok(verify_pqc(&listed, STATE_TOL))?;
    ensure(!r.ok && r.witness.is_some(), || "complex state not flagged".into())?;
    let wide = ok(base.with_states(StateSet::FullHilbert(1)))?;
    let w = ok(verify_pqc(&wide, STATE_TOL))?;
    ensure(!w.ok, || "widened set verified".into())?;
    Ok(format!(
        "n=1..3 verified, H(p) = n; (|0>+i|1>)/sqrt2 deviates by {:e}",
        r.worst_deviation
    ))
}

fn example_channel() -> Check {
    let inst = build_example_pqc::<f64>().unwrap();
    let expect = ok(ComplexMatrix::from_real(&[&[0.75, 0.25], &[0.25, 0.25]]))?;
    let StateSet::ExplicitList(states) = inst.states() else {
        return Err("example state set is not an explicit list".into());
    };
    ensure(states.len() == 2, || "expected two listed states".into())?;
    for phi in states {
        let out = ok(inst.channel().apply(&phi.density()))?;
        let d = dist(out.matrix(), &expect);
        ensure(d <= PAD_DEVIATION, || format!("listed state off by {d:e}"))?;
    }
    let s = ok(von_neumann_entropy(inst.target()))?;
    let oracle = binary_entropy((2.0 + 2f64.sqrt()) / 4.0);
    ensure((s - oracle).abs() <= ENTROPY_TOL, || format!("S = {s}, oracle {oracle}"))?;
    Ok(format!("both states map to target; S(target) = {s:.6} (oracle {oracle:.6})"))
}

fn mixed_target() -> Check {
    let mut rng = SplitMix64::new(5);
    let mut count = 0;
    for n in 1..=3 {
        let mut family = vec![build_pauli_otp::<f64>(n).unwrap()];
        family.extend(conjugated_pads(n, 3, &mut rng).into_iter().map(|(_, i)| i));
        let v = random_unitary(&mut rng, 1 << n);
        let both = build_pauli_otp::<f64>(n).unwrap().channel().conjugate_terms(&v, Side::Both).unwrap();
        family.push(PqcInstance::new(StateSet::FullHilbert(n), both, completely_mixed(1 << n)).unwrap());
        for inst in family {
            let d = dist(inst.target().matrix(), completely_mixed::<f64>(1 << n).matrix());
            ensure(d <= STATE_TOL, || format!("n={n}: target off by {d:e}"))?;
            match certify_mixed_target(&inst, 1e-9) {
                Ok(true) => count += 1,
                Ok(false) => return Err(format!("n={n}: constructed instance did not verify")),
                Err(e) => return Err(format!("n={n}: {e}")),
            }
        }
    }
    for n in 1..=2 {
        let lifted = lift_to_classical(&build_pauli_otp::<f64>(n).unwrap()).unwrap();
        ensure(ok(certify_mixed_target(&lifted, 1e-9))?, || format!("lifted n={n}"))?;
        count += 1;
    }
    Ok(format!("{count} instances certified, no counterexample"))
}

fn lifting() -> Check {
    for n in 1..=2 {
        let base = build_pauli_otp::<f64>(n).unwrap();
        let lifted = ok(lift_to_classical(&base))?;
        ensure(lifted.states() == &StateSet::ClassicalStates(1 << (2 * n)), || "wrong state set".into())?;
        let r = ok(verify_pqc(&lifted, STATE_TOL))?;
        ensure(r.ok, || format!("n={n}: {r}"))?;
        let expect = completely_mixed::<f64>(1 << n).tensor(base.target());
        let d = dist(lifted.target().matrix(), expect.matrix());
        ensure(d <= STATE_TOL, || format!("n={n}: target off by {d:e}"))?;
        let dim = 1 << n;
        for y in 0..dim {
            for z in 0..dim {
                if y != z {
                    let img = base.channel().apply_to_unit(y, z);
                    ensure(img.max_abs() <= STATE_TOL, || format!("E(|{y}><{z}|) = {:e}", img.max_abs()))?;
                }
            }
        }
    }
    let u = bell_basis_unitary::<f64>(1);
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let phi_plus = [h, 0.0, 0.0, h];
    let col = u.column(0);
    let overlap: Complex64 = col.iter().zip(phi_plus).map(|(a, b)| a.conj() * b).sum();
    let fidelity = overlap.norm_sqr();
    ensure(fidelity >= 1.0 - BELL_OVERLAP, || format!("overlap {fidelity}"))?;
    Ok(format!("n=1,2 lifted and verified, cross terms vanish, |<Phi+|U|0>|^2 = {fidelity}"))
}

fn entropy_sandwich() -> Check {
    let mut lines = Vec::new();
    for n in 1..=2 {
        let lifted = lift_to_classical(&build_pauli_otp::<f64>(n).unwrap()).unwrap();
        let r = ok(certify_entropy_bounds(&lifted, ENTROPY_TOL))?;
        ensure(r.classical_bits == 2 * n, || format!("m' = {}", r.classical_bits))?;
        ensure(r.ok(), || format!("lifted n={n}: {r}"))?;
        ensure(r.lower_gap().abs() <= ENTROPY_TOL && r.upper_gap().abs() <= ENTROPY_TOL, || {
            format!("lifted n={n}: gaps {} {}", r.lower_gap(), r.upper_gap())
        })?;
        lines.push(format!("lifted n={n} S={}", r.s_rho0));
    }
    let otp = build_classical_otp::<f64>(1).unwrap();
    let r = ok(certify_entropy_bounds(&otp, ENTROPY_TOL))?;
    ensure(r.ok(), || format!("classical pad: {r}"))?;

    let padded = ok(MixedUnitaryChannel::new(
        1,
        ["I", "I", "X", "X"].iter().map(|s| Term::pauli(0.25, s.parse().unwrap())).collect(),
        None,
    ))?;
    let inst = ok(PqcInstance::new(StateSet::ClassicalStates(2), padded, completely_mixed(2)))?;
    let r = ok(certify_entropy_bounds(&inst, ENTROPY_TOL))?;
    ensure(r.ok(), || format!("padded: {r}"))?;
    ensure(r.upper_gap() >= PADDED_GAP, || format!("padded gap {}", r.upper_gap()))?;
    lines.push(format!("padded gap {}", r.upper_gap()));
    Ok(lines.join(", "))
}

fn entropy_properties() -> Check {
    let mut rng = SplitMix64::new(8);
    let s = |r: &Density64| von_neumann_entropy(r).unwrap();
    for dim in [2usize, 4, 8] {
        for _ in 0..50 {
            let phi = random_pure_state::<f64>(&mut rng, dim);
            ensure(s(&phi.density()).abs() <= ENTROPY_TOL, || "pure state entropy".into())?;

            let small = if dim == 8 { 4 } else { dim };
            let a: Density64 = random_density(&mut rng, 2, 2).unwrap();
            let b: Density64 = random_density(&mut rng, small, small).unwrap();
            ensure((s(&a.tensor(&b)) - s(&a) - s(&b)).abs() <= ENTROPY_TOL, || "additivity".into())?;

            let rank = rng.next_below(dim) + 1;
            let rho: Density64 = random_density(&mut rng, dim, rank).unwrap();
            let u = random_unitary(&mut rng, dim);
            ensure((s(&rho.conjugate(&u).unwrap()) - s(&rho)).abs() <= ENTROPY_TOL, || "unitary invariance".into())?;

            let k = rng.next_below(3) + 2;
            let raw: Vec<f64> = (0..k).map(|_| rng.next_f64() + 1e-3).collect();
            let total: f64 = raw.iter().sum();
            let p: Vec<f64> = raw.iter().map(|w| w / total).collect();
            let mixed: Vec<(f64, Density64)> = p
                .iter()
                .map(|w| {
                    let rank = rng.next_below(dim) + 1;
                    (*w, random_density(&mut rng, dim, rank).unwrap())
                })
                .collect();
            let lhs = s(&DensityMatrix::mix(&mixed).unwrap());
            let rhs: f64 = mixed.iter().map(|(w, r)| w * s(r)).sum();
            ensure(lhs >= rhs - ENTROPY_TOL, || "concavity".into())?;

            let pure: Vec<(f64, Density64)> = p
                .iter()
                .map(|w| (*w, random_pure_state::<f64>(&mut rng, dim).density()))
                .collect();
            let ens = s(&DensityMatrix::mix(&pure).unwrap());
            ensure(ens <= shannon_entropy(&p).unwrap() + ENTROPY_TOL, || "ensemble bound".into())?;
        }
    }
    Ok("properties 1-5 at dims 2, 4, 8, 50 instances each".into())
}

fn protocol_round_trip() -> Check {
    let mut rng = SplitMix64::new(9);
    let mut worst = 0.0f64;
    let mut runs = 0;
    for (name, inst) in constructed() {
        let dim = inst.channel().input_dim();
        let mut plaintexts: Vec<Pure64> = (0..3).map(|_| inst.states().sample(&mut rng, dim)).collect();
        if let StateSet::ExplicitList(v) = inst.states() {
            plaintexts = v.clone();
        }
        for phi in &plaintexts {
            for key in 0..inst.key_count() {
                let back = ok(decrypt(&inst, key, &ok(encrypt(&inst, key, phi))?))?;
                worst = worst.max(dist(back.matrix(), phi.density().matrix()));
                runs += 1;
            }
        }
        let a = ok(estimate_eve_state(&inst, &plaintexts[0], 0, 0))?;
        let b = ok(estimate_eve_state(&inst, &plaintexts[1], 0, 0))?;
        let d = dist(a.estimate.matrix(), b.estimate.matrix()).max(a.distance).max(b.distance);
        ensure(d <= STATE_TOL, || format!("{name}: exact Eve view depends on plaintext ({d:e})"))?;
    }
    ensure(worst <= ROUND_TRIP, || format!("round trip {worst:e}"))?;
    let inst = build_pauli_otp::<f64>(1).unwrap();
    let sampled = ok(estimate_eve_state(&inst, &ok(PureState::basis(2, 0))?, 10_000, 2024))?;
    ensure(sampled.distance <= EVE_SAMPLED, || format!("sampled {}", sampled.distance))?;
    Ok(format!(
        "{runs} key/plaintext round trips worst {worst:e}; sampled Eve distance {:.4}",
        sampled.distance
    ))
}

fn three_key_search() -> Check {
    let r = search_three_term_depolarizers(16);
    ensure(r.grid_size == 32 * 17 * 32, || format!("grid {}", r.grid_size))?;
    ensure(r.min_max_entry > SEARCH_DISTANCE, || format!("min max-entry {}", r.min_max_entry))?;
    ensure(r.sampled_min_max_entry > SEARCH_DISTANCE, || {
        format!("sampled min max-entry {}", r.sampled_min_max_entry)
    })?;
    ensure(r.min_frobenius >= 1.0 / 3f64.sqrt() - 1e-12, || format!("min Frobenius {}", r.min_frobenius))?;
    Ok(format!(
        "{} channels, min max-entry distance {:.4}, min Frobenius {:.4}; {} random triples min {:.4}",
        r.evaluated, r.min_max_entry, r.min_frobenius, r.sampled, r.sampled_min_max_entry
    ))
}

fn round_trip_documents() -> Result<(), String> {
    let mut rng = SplitMix64::new(11);
    let same = |a: &Matrix64, b: &Matrix64, what: &str| {
        let d = dist(a, b);
        ensure(d <= SERIAL_TOL, || format!("{what}: {d:e}"))
    };
    let reparse = |doc: Document| ok(Document::parse(&doc.to_text()));

    let phi = random_pure_state::<f64>(&mut rng, 8);
    let back = ok(reparse(Document::from_state(&phi))?.into_state())?;
    let d = phi.amplitudes().iter().zip(back.amplitudes()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    ensure(d <= SERIAL_TOL, || format!("state: {d:e}"))?;

    let rho: Density64 = ok(random_density(&mut rng, 4, 3))?;
    same(rho.matrix(), ok(reparse(Document::from_density(&rho))?.into_density())?.matrix(), "density")?;

    let ancilla: Density64 = ok(random_density(&mut rng, 2, 2))?;
    let terms = vec![
        Term::new(0.3, random_unitary(&mut rng, 4)),
        Term::new(0.7, random_unitary(&mut rng, 4)),
    ];
    let ch: Channel64 = ok(MixedUnitaryChannel::new(1, terms, Some(ancilla)))?;
    let back = ok(reparse(Document::from_channel(&ch))?.into_channel())?;
    ensure(back.probabilities() == ch.probabilities(), || "channel probabilities".into())?;
    for (a, b) in ch.terms().iter().zip(back.terms()) {
        same(&a.unitary, &b.unitary, "channel unitary")?;
    }
    same(ch.ancilla().unwrap().matrix(), back.ancilla().unwrap().matrix(), "ancilla")?;

    for (name, inst) in constructed() {
        let back = ok(reparse(Document::from_pqc(&inst))?.into_pqc())?;
        ensure(back.states() == inst.states(), || format!("{name}: state set"))?;
        same(inst.target().matrix(), back.target().matrix(), &name)?;
        for (a, b) in inst.channel().terms().iter().zip(back.channel().terms()) {
            ensure(a.p == b.p, || format!("{name}: probability"))?;
            same(&a.unitary, &b.unitary, &name)?;
        }
    }

    let inst = build_pauli_otp::<f64>(2).unwrap();
    let mut keys = pqc_core::KeySource::for_instance(&inst, 3);
    let t = ok(pqc_core::run_protocol(&inst, &mut keys, &random_pure_state(&mut rng, 4)))?;
    let doc = Document::from_transcript(3, &t);
    ensure(reparse(doc.clone())? == doc, || "transcript".into())?;
    Ok(())
}

struct Cli {
    bin: PathBuf,
    dir: tempfile::TempDir,
}

struct Run {
    code: i32,
    stdout: String,
}

impl Cli {
    fn new() -> Self {
        Self {
            bin: PathBuf::from(env!("CARGO_BIN_EXE_pqc")),
            dir: tempfile::tempdir().expect("temp dir"),
        }
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn run(&self, args: &[&str]) -> Run {
        let out = Command::new(&self.bin).args(args).output().expect("run pqc");
        Run {
            code: out.status.code().unwrap_or(-1),
            stdout: String::from_utf8_lossy(&out.stdout).into_owned(),
        }
    }

    fn expect(&self, args: &[&str], code: i32) -> Result<Run, String> {
        let r = self.run(args);
        ensure(r.code == code, || format!("`pqc {}` exited {} (want {code})", args.join(" "), r.code))?;
        Ok(r)
    }

    fn write(&self, name: &str, text: &str) -> String {
        let p = self.path(name);
        std::fs::write(&p, text).expect("write fixture");
        p.to_string_lossy().into_owned()
    }
}

fn value_of(stdout: &str, key: &str) -> Option<f64> {
    stdout
        .lines()
        .find_map(|l| l.strip_prefix(&format!("{key} = ")))
        .and_then(|v| v.trim().parse().ok())
}

fn exit_code_matrix(cli: &Cli) -> Result<usize, String> {
    let s = |p: &Path| p.to_string_lossy().into_owned();
    let p1 = s(&cli.path("p1.json"));
    let p2 = s(&cli.path("p2.json"));
    let ex = s(&cli.path("ex.json"));
    let lifted = s(&cli.path("lifted.json"));
    let mut cases = 0;
    let mut expect = |args: &[&str], code: i32| -> Result<Run, String> {
        cases += 1;
        cli.expect(args, code)
    };

    let r = expect(&["build", "pauli-otp", "-n", "1"], 0)?;
    ensure(r.stdout.matches("\"p\": 0.25").count() == 4, || "pauli-otp -n 1 terms".into())?;
    expect(&["build", "pauli-otp", "-n", "1", "-o", &p1], 0)?;
    expect(&["build", "pauli-otp", "-n", "2", "-o", &p2], 0)?;
    let r = expect(&["build", "example", "-o", &ex], 0)?;
    ensure(r.stdout.is_empty(), || "build -o should not print".into())?;
    let r = expect(&["build", "real-otp", "-n", "2"], 0)?;
    ensure(["II", "IY", "YI", "YY"].iter().all(|l| r.stdout.contains(&format!("\"{l}\""))), || {
        "real-otp -n 2 terms".into()
    })?;
    expect(&["build", "pauli-otp", "-n", "9"], 2)?;
    expect(&["build", "quantum"], 2)?;
    expect(&["frobnicate"], 2)?;

    expect(&["verify", &p1], 0)?;
    let id = cli.write(
        "identity.json",
        r#"{"kind": "pqc", "version": 1, "states": {"type": "full_hilbert", "n": 1},
            "channel": {"n": 1, "terms": [{"p": 1.0, "pauli": "I"}]},
            "target": [[[0.5, 0.0], [0.0, 0.0]], [[0.0, 0.0], [0.5, 0.0]]]}"#,
    );
    let r = expect(&["verify", &id], 1)?;
    ensure(r.stdout.contains("witness = |0><0|"), || format!("identity witness: {}", r.stdout))?;
    let full = std::fs::read_to_string(&p1).map_err(|e| e.to_string())?;
    let truncated = cli.write("truncated.json", &full[..full.len() / 2]);
    expect(&["verify", &truncated], 2)?;
    expect(&["verify", &s(&cli.path("missing.json"))], 2)?;
    expect(&["verify", &p1, "--tol", "-1"], 2)?;

    let r = expect(&["certify", &p2, "--theorem", "4"], 0)?;
    ensure(value_of(&r.stdout, "max_p") == Some(0.0625), || format!("max_p: {}", r.stdout))?;
    expect(&["certify", &p1, "--theorem", "3"], 0)?;
    expect(&["certify", &ex, "--theorem", "3"], 2)?;
    expect(&["certify", &id, "--theorem", "3"], 1)?;
    expect(&["certify", &id, "--theorem", "4"], 2)?;
    expect(&["certify", &p1, "--theorem", "6"], 2)?;
    expect(&["certify", &p1, "--theorem", "5"], 2)?;

    expect(&["lift", &p1, "-o", &lifted], 0)?;
    let lifted_doc = ok(Document::parse(&std::fs::read_to_string(&lifted).map_err(|e| e.to_string())?))?;
    let lifted_inst = ok(lifted_doc.into_pqc())?;
    ensure(lifted_inst.channel().total_qubits() == 2, || "lifted channel width".into())?;
    ensure(dist(lifted_inst.target().matrix(), completely_mixed::<f64>(4).matrix()) == 0.0, || {
        "lifted target".into()
    })?;
    expect(&["verify", &lifted], 0)?;
    let r = expect(&["certify", &lifted, "--theorem", "6"], 0)?;
    ensure(r.stdout.contains("S_rho0 = 2.0"), || format!("S_rho0: {}", r.stdout))?;
    expect(&["lift", &ex], 2)?;

    let zero = cli.write("zero.json", &Document::from_state(&PureState::basis(2, 0).unwrap()).to_text());
    let r = expect(&["protocol", &p1, "--seed", "7", "--plaintext", &zero, "--samples", "0"], 0)?;
    let rt = value_of(&r.stdout, "round_trip_deviation").ok_or("no round trip line")?;
    let eve = value_of(&r.stdout, "eve_distance").ok_or("no Eve line")?;
    ensure(rt <= ROUND_TRIP, || format!("round trip {rt:e}"))?;
    ensure(eve <= STATE_TOL, || format!("eve {eve:e}"))?;
    ensure(value_of(&r.stdout, "H(p)") == Some(2.0), || format!("entropy line: {}", r.stdout))?;
    let r = expect(&["protocol", &p2, "--seed", "7", "--random-plaintext"], 0)?;
    ensure(value_of(&r.stdout, "H(p)") == Some(4.0), || format!("entropy line: {}", r.stdout))?;
    expect(&["protocol", &p1, "--seed", "7"], 2)?;
    expect(&["protocol", &id, "--seed", "7", "--random-plaintext"], 2)?;
    let wide = cli.write("wide.json", &Document::from_state(&PureState::basis(4, 0).unwrap()).to_text());
    expect(&["protocol", &p1, "--seed", "7", "--plaintext", &wide], 2)?;
    Ok(cases)
}

fn byte_identical(cli: &Cli) -> Result<(), String> {
    for args in [
        vec!["build", "pauli-otp", "-n", "3"],
        vec!["build", "real-otp", "-n", "2"],
        vec!["build", "example"],
    ] {
        let a = cli.expect(&args, 0)?.stdout;
        let b = cli.expect(&args, 0)?.stdout;
        ensure(a == b, || format!("`{}` differs between runs", args.join(" ")))?;
    }
    let p2 = cli.path("p2.json").to_string_lossy().into_owned();
    let mut outputs = Vec::new();
    for name in ["t1.json", "t2.json"] {
        let t = cli.path(name).to_string_lossy().into_owned();
        let r = cli.expect(
            &["protocol", &p2, "--seed", "42", "--random-plaintext", "--samples", "500", "--transcript", &t],
            0,
        )?;
        outputs.push((r.stdout, std::fs::read(&t).map_err(|e| e.to_string())?));
    }
    ensure(outputs[0] == outputs[1], || "protocol transcripts differ".into())?;
    let l1 = cli.path("l1.json").to_string_lossy().into_owned();
    let l2 = cli.path("l2.json").to_string_lossy().into_owned();
    cli.expect(&["lift", &p2, "-o", &l1], 0)?;
    cli.expect(&["lift", &p2, "-o", &l2], 0)?;
    ensure(std::fs::read(&l1).ok() == std::fs::read(&l2).ok(), || "lift output differs".into())?;
    Ok(())
}

fn toolchain() -> Check {
    round_trip_documents()?;
    let cli = Cli::new();
    let cases = exit_code_matrix(&cli)?;
    byte_identical(&cli)?;
    Ok(format!("documents exact to {SERIAL_TOL:e}, {cases} CLI exit-code cases, repeat runs byte-identical"))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 11] = [
        ("Pauli one-time pad hides every state", pauli_pad_privacy),
        ("key entropy 2n and key probabilities at most 4^-n", key_size_pairing),
        ("real-amplitude pad", real_pad),
        ("two-state example channel", example_channel),
        ("private channels over all states have completely mixed output", mixed_target),
        ("lifting to classical states", lifting),
        ("entropy sandwich", entropy_sandwich),
        ("Von Neumann entropy properties", entropy_properties),
        ("protocol round trip and Eve's view", protocol_round_trip),
        ("no three-key depolarizer on the Euler grid", three_key_search),
        ("serialization, exit codes, reproducibility", toolchain),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        match result {
            Ok(detail) => println!("[PASS] {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
