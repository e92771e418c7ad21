//! Acceptance suite. Prints one PASS/FAIL line per criterion.
//!
//! Criteria listed in `DOCUMENTED_FAILURES` are expected to fail on the
//! literal construction; they still print FAIL but do not abort the run.

use std::fmt::Write;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use gq_ldpc::analysis::{check_biregular, density, girth, has_four_cycle, matches_displayed, Bidegree, Girth};
use gq_ldpc::channel::{decode_spa, DecoderConfig};
use gq_ldpc::code::{
    design_rate_formula, export_alist, gf2_rank, hamming_distance, import_alist, is_codeword, parity_check_from_graph,
    syndrome, systematic_generator, ParityCheckMatrix,
};
use gq_ldpc::graph::{build_graph, Family, GraphSpec, Point};
use gq_ldpc::sim::{emit_csv, run_point, run_sweep, SimCode, SweepConfig};
use libm::erfc;

/// Criterion 2 asks for girth >= 8 on F(F_3, F_9) and no 4-cycles on
/// F(Z_4, Z_16); both are false for the incidence relations as written.
const DOCUMENTED_FAILURES: &[u32] = &[2];

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn label(family: Family, base: u32) -> String {
    match family {
        Family::Field => format!("F(F_{base},F_{})", base * base),
        Family::Ring => format!("F(Z_{base},Z_{})", base * base),
    }
}

struct CensusRow {
    bases: &'static [(Family, u32)],
    density: &'static str,
    bidegree: (usize, usize),
    vertices: usize,
    edges: usize,
}

fn census(rows: &[CensusRow], limit: Duration) -> Outcome {
    let start = Instant::now();
    let mut detail = String::new();
    for row in rows {
        for &(family, base) in row.bases {
            let g = build_graph(&GraphSpec::new(family, base)).map_err(|e| e.to_string())?;
            let bp = g.to_bipartite();
            let name = label(family, base);
            ensure(bp.num_vertices() == row.vertices, || format!("{name}: |V| = {}", bp.num_vertices()))?;
            ensure(bp.num_edges() == row.edges, || format!("{name}: |E| = {}", bp.num_edges()))?;
            let bd = check_biregular(&bp).map_err(|e| format!("{name}: {e}"))?;
            let want = Bidegree { line_degree: row.bidegree.0, point_degree: row.bidegree.1 };
            ensure(bd == want, || format!("{name}: bidegree {bd}"))?;
            let d = density(&bp).map_err(|e| e.to_string())?;
            ensure(matches_displayed(&d, row.density), || format!("{name}: density {d} vs {}", row.density))?;
            write!(detail, "{name} ok; ").unwrap();
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < limit, || format!("took {elapsed:?}, limit {limit:?}"))?;
    Ok(format!("{detail}{elapsed:.2?}"))
}

fn criterion_1() -> Outcome {
    use Family::{Field, Ring};
    let small = [
        CensusRow { bases: &[(Field, 3), (Ring, 3)], density: "0.014", bidegree: (3, 9), vertices: 324, edges: 729 },
        CensusRow { bases: &[(Field, 4), (Ring, 4)], density: "0.005", bidegree: (4, 16), vertices: 1280, edges: 4096 },
        CensusRow {
            bases: &[(Field, 5), (Ring, 5)],
            density: "0.002",
            bidegree: (5, 25),
            vertices: 3750,
            edges: 15625,
        },
        CensusRow { bases: &[(Ring, 6)], density: "0.001", bidegree: (6, 36), vertices: 9072, edges: 46656 },
    ];
    let large = [CensusRow {
        bases: &[(Field, 7), (Ring, 7)],
        density: "0.0006",
        bidegree: (7, 49),
        vertices: 19208,
        edges: 117649,
    }];
    let a = census(&small, Duration::from_secs(10))?;
    let b = census(&large, Duration::from_secs(60))?;
    Ok(format!("{a} | {b}"))
}

fn criterion_2() -> Outcome {
    let mut detail = String::new();
    let mut failures = Vec::new();
    let cases = [
        (Family::Field, 2, 8),
        (Family::Field, 3, 8),
        (Family::Ring, 2, 6),
        (Family::Ring, 3, 6),
        (Family::Ring, 4, 6),
    ];
    for (family, base, bound) in cases {
        let g = build_graph(&GraphSpec::new(family, base)).map_err(|e| e.to_string())?;
        let gi = girth(&g.to_bipartite());
        let h = parity_check_from_graph(&g).map_err(|e| e.to_string())?;
        let four = has_four_cycle(&h);
        let name = label(family, base);
        write!(detail, "{name} girth {gi}; ").unwrap();
        if gi < Girth::Finite(bound) {
            failures.push(format!("{name} girth {gi} < {bound}"));
        }
        if four {
            failures.push(format!("{name} H has a 4-cycle"));
        }
    }
    // ring girth census for the open "is it 8" question
    let ring: Vec<String> = (2..=5)
        .map(|n| {
            let g = build_graph(&GraphSpec::ring(n)).unwrap();
            format!("n={n}: {}", girth(&g.to_bipartite()))
        })
        .collect();
    write!(detail, "ring girths [{}]", ring.join(", ")).unwrap();
    if failures.is_empty() {
        Ok(detail)
    } else {
        Err(format!("{}; {detail}", failures.join("; ")))
    }
}

fn criterion_3() -> Outcome {
    let rows: [(Family, u32, &str, usize); 9] = [
        (Family::Field, 2, "0.5", 16),
        (Family::Ring, 2, "0.5", 16),
        (Family::Field, 3, "0.67", 162),
        (Family::Ring, 3, "0.67", 162),
        (Family::Field, 4, "0.75", 768),
        (Family::Ring, 4, "0.75", 768),
        (Family::Field, 5, "0.8", 2500),
        (Family::Ring, 5, "0.8", 2500),
        (Family::Ring, 6, "0.83", 6480),
    ];
    let mut detail = Vec::new();
    for (family, base, rate, nominal_k) in rows {
        let g = build_graph(&GraphSpec::new(family, base)).map_err(|e| e.to_string())?;
        let h = parity_check_from_graph(&g).map_err(|e| e.to_string())?;
        let name = label(family, base);
        let (n, r) = (base.pow(5) as usize, base.pow(4) as usize);
        ensure(h.cols() == n && h.rows() == r, || format!("{name}: H is {}x{}", h.rows(), h.cols()))?;
        let design = design_rate_formula(base, None);
        let exact = num_rational::Ratio::new((n - r) as u64, n as u64);
        ensure((design - (n - r) as f64 / n as f64).abs() < 1e-12, || format!("{name}: formula rate {design}"))?;
        ensure(matches_displayed(&exact, rate), || format!("{name}: design rate {exact} vs {rate}"))?;
        let rank = gf2_rank(&h).map_err(|e| e.to_string())?;
        let k = n - rank;
        let verdict = if k == nominal_k { "full rank".to_string() } else { format!("N - R = {nominal_k}") };
        detail.push(format!("{name} rank {rank} K {k} ({verdict})"));
    }
    Ok(detail.join("; "))
}

fn criterion_4() -> Outcome {
    let g = build_graph(&GraphSpec::ring(5).with_first_r(16)).map_err(|e| e.to_string())?;
    let bp = g.to_bipartite();
    let h = parity_check_from_graph(&g).map_err(|e| e.to_string())?;
    ensure(h.cols() == 2000 && h.rows() == 625, || format!("H is {}x{}", h.rows(), h.cols()))?;
    let bd = check_biregular(&bp).map_err(|e| e.to_string())?;
    ensure(bd == Bidegree { line_degree: 5, point_degree: 16 }, || format!("bidegree {bd}"))?;
    let rate = design_rate_formula(5, Some(16));
    ensure((rate - 0.6875).abs() < 1e-12, || format!("design rate {rate}"))?;
    ensure(matches_displayed(&num_rational::Ratio::new(11u64, 16), "0.69"), || "rate display".into())?;
    let rank = gf2_rank(&h).map_err(|e| e.to_string())?;
    let verdict =
        if rank == 625 { "K = 1375 confirmed".to_string() } else { format!("K = {} (N - R = 1375)", 2000 - rank) };
    Ok(format!("N 2000, bidegree {bd}, rate 0.6875, rank {rank}, {verdict}"))
}

#[rustfmt::skip]
const HAMMING: [u8; 21] = [
    1, 1, 1, 0, 1, 0, 0,
    1, 0, 1, 1, 0, 1, 0,
    1, 1, 0, 1, 0, 0, 1,
];

fn criterion_5() -> Outcome {
    let h = ParityCheckMatrix::from_dense(3, 7, &HAMMING);
    let text = export_alist(&h);
    let back = import_alist(&text).map_err(|e| e.to_string())?;
    ensure(back == h && export_alist(&back) == text, || "alist round trip differs".into())?;
    ensure(gf2_rank(&h) == Ok(3), || "rank".into())?;

    let g = systematic_generator(&h).map_err(|e| e.to_string())?;
    // brute-force codebook: all 7-bit words with zero syndrome
    let words: Vec<Vec<u8>> = (0..128u8).map(|v| (0..7).map(|i| v >> i & 1).collect()).collect();
    let mut brute: Vec<Vec<u8>> =
        words.iter().filter(|w| syndrome(&h, w).unwrap().iter().all(|&s| s == 0)).cloned().collect();
    let mut book: Vec<Vec<u8>> =
        (0..16u8).map(|v| g.encode(&(0..4).map(|i| v >> i & 1).collect::<Vec<_>>()).unwrap()).collect();
    book.sort();
    brute.sort();
    ensure(book == brute, || "encoded codebook differs from brute force".into())?;
    ensure(book.iter().all(|c| is_codeword(&h, c).unwrap()), || "nonzero syndrome".into())?;
    let dmin = (0..16)
        .flat_map(|i| (i + 1..16).map(move |j| (i, j)))
        .map(|(i, j)| hamming_distance(&book[i], &book[j]).unwrap())
        .min()
        .unwrap();
    ensure(dmin == 3, || format!("dmin {dmin}"))?;

    let mag = 2.0;
    for c in &book {
        for pos in 0..7 {
            let mut llr: Vec<f64> = c.iter().map(|&b| if b == 0 { mag } else { -mag }).collect();
            llr[pos] = -llr[pos];
            let r = decode_spa(&h, &llr, 50);
            ensure(r.hard == *c && r.converged(), || format!("flip {pos} of {c:?} not corrected"))?;
        }
    }
    Ok(format!("alist byte-exact, rank 3, 16 codewords, dmin 3, 112 flips corrected at |LLR| = {mag}"))
}

/// Uncoded BPSK bit error probability `Q(sqrt(2 Eb/N0))`.
fn uncoded_ber(ebn0_db: f64) -> f64 {
    let x = (2.0 * 10f64.powf(ebn0_db / 10.0)).sqrt();
    0.5 * erfc(x / 2f64.sqrt())
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let g = build_graph(&GraphSpec::field(3)).map_err(|e| e.to_string())?;
    let h = parity_check_from_graph(&g).map_err(|e| e.to_string())?;
    let code = SimCode::new(h).map_err(|e| e.to_string())?;
    let cfg = SweepConfig {
        grid: (0..=8).map(f64::from).collect(),
        decoder: DecoderConfig::spa(50),
        min_bit_errors: 100,
        seed: 2024,
        ..Default::default()
    };

    let noiseless = run_point(&code, &SweepConfig { max_frames: 2000, ..cfg.clone() }, 100, f64::INFINITY);
    ensure(noiseless.bit_errors == 0 && noiseless.frames == 2000, || format!("noiseless: {noiseless:?}"))?;

    let points = run_sweep(&code, &cfg).map_err(|e| e.to_string())?;
    for w in points.windows(2) {
        let se = (w[0].std_error().powi(2) + w[1].std_error().powi(2)).sqrt();
        ensure(w[1].ber <= w[0].ber + 3.0 * se, || {
            format!("BER rises from {} dB to {} dB: {} -> {}", w[0].ebn0_db, w[1].ebn0_db, w[0].ber, w[1].ber)
        })?;
    }
    let at4 = points.iter().find(|p| p.ebn0_db == 4.0).unwrap();
    let bound = uncoded_ber(4.0);
    ensure(at4.ber < bound, || format!("BER at 4 dB {} >= uncoded {bound}", at4.ber))?;
    let reached = points.iter().find(|p| p.ber < 1e-4).map(|p| p.ebn0_db);
    ensure(reached.is_some(), || "BER never below 1e-4".into())?;

    let uncoded =
        run_point(&SimCode::uncoded(243), &SweepConfig { max_frames: 2000, min_bit_errors: 0, ..cfg.clone() }, 0, 0.0);
    let q = uncoded_ber(0.0);
    ensure((uncoded.ber - q).abs() <= 3.0 * uncoded.std_error(), || {
        format!("uncoded BER {} vs Q(sqrt 2) {q}", uncoded.ber)
    })?;

    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(15 * 60), || format!("took {elapsed:?}"))?;
    let curve: Vec<String> = points.iter().map(|p| format!("{}:{:.2e}", p.ebn0_db, p.ber)).collect();
    Ok(format!(
        "rate {:.4}; BER [{}]; 4 dB {:.2e} < {bound:.3e}; < 1e-4 at {} dB; uncoded 0 dB {:.4} vs {q:.4}; {elapsed:.1?}",
        code.rate(),
        curve.join(" "),
        at4.ber,
        reached.unwrap(),
        uncoded.ber
    ))
}

fn criterion_7() -> Outcome {
    let g = build_graph(&GraphSpec::field(3)).map_err(|e| e.to_string())?;
    let code = SimCode::new(parity_check_from_graph(&g).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let cfg = SweepConfig {
        grid: vec![1.0, 2.0, 3.0],
        max_frames: 1500,
        min_bit_errors: 300,
        seed: 17,
        ..Default::default()
    };
    let sweep = |threads: usize| -> String {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| emit_csv(&run_sweep(&code, &cfg).unwrap()))
    };
    let reference = sweep(1);
    for threads in [1, 2, 3, 8] {
        ensure(sweep(threads) == reference, || format!("CSV differs with {threads} threads"))?;
    }
    let other = emit_csv(&run_sweep(&code, &SweepConfig { seed: 18, ..cfg.clone() }).unwrap());
    ensure(other != reference, || "different seeds gave identical output".into())?;
    Ok(format!("byte-identical CSV ({} bytes) for 1, 2, 3, 8 threads", reference.len()))
}

fn criterion_8() -> Outcome {
    let mut pairs = 0u64;
    for (family, base) in [(Family::Field, 2), (Family::Field, 3), (Family::Ring, 2), (Family::Ring, 3)] {
        let g = build_graph(&GraphSpec::new(family, base)).map_err(|e| e.to_string())?;
        let name = label(family, base);
        for p in 0..g.num_points() {
            let point: Point = g.point(p);
            let adj = g.point_neighbors(p);
            for l in 0..g.num_lines() {
                let inc = g.incident(&point, &g.line(l)).map_err(|e| e.to_string())?;
                ensure(inc == adj.contains(&(l as u32)), || format!("{name}: point {p}, line {l}"))?;
                pairs += 1;
            }
        }
        let bp = g.to_bipartite();
        let left: usize = (0..bp.num_left()).map(|i| bp.left(i).len()).sum();
        let right: usize = (0..bp.num_right()).map(|j| bp.right(j).len()).sum();
        ensure(left + right == 2 * bp.num_edges(), || format!("{name}: handshake"))?;
    }

    let full = build_graph(&GraphSpec::ring(2)).map_err(|e| e.to_string())?;
    let full_girth = girth(&full.to_bipartite());
    let mut subsets = 0;
    for mask in 1u32..16 {
        let xs: Vec<u32> = (0..4).filter(|i| mask >> i & 1 == 1).collect();
        let sub = full.restrict_lines(&xs).map_err(|e| e.to_string())?;
        let gi = girth(&sub.to_bipartite());
        ensure(gi >= full_girth, || format!("R = {xs:?}: girth {gi} < {full_girth}"))?;
        subsets += 1;
    }
    Ok(format!("{pairs} incidence pairs agree, handshake holds, {subsets} restrictions keep girth >= {full_girth}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        (1, "graph census", criterion_1),
        (2, "girth and 4-cycle freedom", criterion_2),
        (3, "code parameters", criterion_3),
        (4, "restricted subgraph", criterion_4),
        (5, "Hamming fixture", criterion_5),
        (6, "BER properties", criterion_6),
        (7, "determinism", criterion_7),
        (8, "exhaustive structural oracles", criterion_8),
    ];
    let mut unexpected = Vec::new();
    for (id, name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let documented = DOCUMENTED_FAILURES.contains(&id);
        match &outcome {
            Ok(detail) => println!("PASS [{id}] {name} ({elapsed:.1?}): {detail}"),
            Err(why) => println!("FAIL [{id}] {name} ({elapsed:.1?}): {why}"),
        }
        match (outcome.is_ok(), documented) {
            (false, false) => unexpected.push(format!("criterion {id} failed")),
            (true, true) => println!("note: criterion {id} is listed as a documented failure but passed"),
            _ => {}
        }
    }
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        eprintln!("{}", unexpected.join("\n"));
        ExitCode::FAILURE
    }
}
