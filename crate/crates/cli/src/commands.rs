use std::fmt::Write as _;
use std::time::Instant;

use anyhow::{anyhow, bail, ensure, Context, Result};
use num_rational::BigRational;
use positroid::order::parse_elements;
use positroid::poset::{
    census_csv, check_necklace_containment, check_shift_conjecture, closure_vs_direct, ClosureReport,
    ContainmentViolation, PosetJson, ShiftConjectureReport,
};
use positroid::shift::shift as apply_shift;
use positroid::{
    bases_from_necklace, build_poset, flags, is_quotient, is_quotient_by_rank, necklace_from_matroid, parse_necklace,
    perm_from_matroid, predicted_circuits, realize_uniform, shift_left, uncovered_circuits, uniform_quotient_census,
    CensusRow, DecoratedPermutation, Direction, FreezeSet, IndexSet, Limits, Matroid, PositroidError, QuotientPoset,
    RealizationReport,
};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::{Config, Format, Kind, Side};

/// Posets from this size on hold over 10^5 elements and need `--long-running`.
const LARGE_POSET: usize = 8;

pub struct Output {
    pub text: String,
    pub verdict: bool,
}

fn yes(text: String) -> Result<Output> {
    Ok(Output { text, verdict: true })
}

fn yes_no(flag: bool) -> &'static str {
    if flag {
        "yes"
    } else {
        "no"
    }
}

fn unsupported(format: Format, command: &str) -> anyhow::Error {
    anyhow!("--format {format:?} is not available for `{command}`")
}

fn limits(config: &Config) -> Limits {
    Limits { n_cap: config.n_cap, long_running: config.long_running }
}

fn parse_perm(text: &str) -> Result<DecoratedPermutation> {
    text.parse::<DecoratedPermutation>().with_context(|| format!("parsing decorated permutation {text:?}"))
}

/// Basis lists: JSON `{"n":..,"bases":[..]}`, brace groups `{1,3} {1,4}`, or `1,3;1,4`.
/// The empty basis is written `{}` or `∅`.
fn parse_bases(text: &str, n: Option<usize>) -> Result<Matroid> {
    let trimmed = text.trim();
    if trimmed.starts_with("{\"") {
        let m: Matroid = serde_json::from_str(trimmed).context("parsing matroid JSON")?;
        if let Some(n) = n {
            ensure!(m.ground_size() == n, "matroid JSON is on [{}] but --n is {n}", m.ground_size());
        }
        return Ok(m);
    }
    let n = n.ok_or_else(|| anyhow!("basis lists need --n"))?;
    let groups: Vec<String> = if trimmed.contains('{') || trimmed.contains('∅') {
        trimmed
            .replace('∅', "{}")
            .split('}')
            .filter(|g| g.contains('{'))
            .map(|g| {
                g.trim_start_matches(|c: char| c == ',' || c == ';' || c.is_whitespace())
                    .trim_start_matches('{')
                    .to_string()
            })
            .collect()
    } else {
        trimmed.split(';').map(str::to_string).collect()
    };
    ensure!(!groups.is_empty(), "no bases given");
    let bases = groups
        .iter()
        .map(|g| parse_elements(g.trim(), n).with_context(|| format!("parsing basis {g:?}")))
        .collect::<Result<Vec<IndexSet>>>()?;
    Ok(Matroid::from_bases(n, bases)?)
}

fn bases_text(m: &Matroid) -> String {
    m.bases().iter().map(|b| b.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn convert(config: &Config, from: Kind, to: Kind, n: Option<usize>, input: &str) -> Result<Output> {
    let json = match config.format {
        Format::Text => false,
        Format::Json => true,
        other => return Err(unsupported(other, "convert")),
    };
    let check_n = |actual: usize| -> Result<()> {
        if let Some(n) = n {
            ensure!(n == actual, "input lives on [{actual}] but --n is {n}");
        }
        Ok(())
    };
    let perm_out = |p: &DecoratedPermutation| {
        if json {
            serde_json::to_string(p).expect("permutation serializes")
        } else {
            p.to_string()
        }
    };
    let necklace_out = |m: &positroid::GrassmannNecklace| if json { m.to_json() } else { m.to_string() };
    let bases_out = |m: &Matroid| if json { m.to_json() } else { bases_text(m) };

    let text = match from {
        Kind::Perm => {
            let p = parse_perm(input)?;
            check_n(p.n())?;
            match to {
                Kind::Perm => perm_out(&p),
                Kind::Necklace => necklace_out(&p.necklace()),
                Kind::Bases => bases_out(&p.positroid()),
            }
        }
        Kind::Necklace => {
            let necklace = parse_necklace(input)?;
            check_n(necklace.n())?;
            match to {
                Kind::Perm => perm_out(&necklace.to_permutation()),
                Kind::Necklace => necklace_out(&necklace),
                Kind::Bases => bases_out(&bases_from_necklace(&necklace)?),
            }
        }
        Kind::Bases => {
            let m = parse_bases(input, n)?;
            match to {
                Kind::Perm => match perm_from_matroid(&m) {
                    Ok(p) => perm_out(&p),
                    Err(PositroidError::NotAPositroid { containing }) => {
                        let text = if json {
                            json!({ "positroid": false, "smallest_containing": containing.to_string() }).to_string()
                        } else {
                            format!("not a positroid; smallest positroid containing it: {containing}")
                        };
                        return Ok(Output { text: text + "\n", verdict: false });
                    }
                    Err(e) => return Err(e.into()),
                },
                Kind::Necklace => necklace_out(&necklace_from_matroid(&m)),
                Kind::Bases => bases_out(&m),
            }
        }
    };
    yes(text + "\n")
}

pub fn quotient(config: &Config, lower: &str, upper: &str) -> Result<Output> {
    let (lp, up) = (parse_perm(lower)?, parse_perm(upper)?);
    let (lm, um) = (lp.positroid(), up.positroid());
    let direct = is_quotient(&lm, &um)?;
    let by_rank = is_quotient_by_rank(&lm, &um)?;
    let flag_list = if direct && lm.rank() < um.rank() { flags(&lm, &um)? } else { Vec::new() };
    let uncovered = uncovered_circuits(&lm, &um)?;
    let text = match config.format {
        Format::Text => {
            let mut out = format!(
                "quotient: {}\nrank test: {}\nranks: {} -> {}\n",
                yes_no(direct),
                yes_no(by_rank),
                lm.rank(),
                um.rank()
            );
            if direct && lm.rank() < um.rank() {
                writeln!(out, "flags: {}", flag_list.len())?;
                for f in &flag_list {
                    writeln!(out, "  {} ⊂ {}", f.lower, f.upper)?;
                }
            }
            if !uncovered.is_empty() {
                let list: Vec<String> = uncovered.iter().map(ToString::to_string).collect();
                writeln!(out, "circuits of the upper positroid not covered: {}", list.join(" "))?;
            }
            out
        }
        Format::Json => {
            let value = json!({
                "lower": lp.to_string(),
                "upper": up.to_string(),
                "quotient": direct,
                "rank_test": by_rank,
                "lower_rank": lm.rank(),
                "upper_rank": um.rank(),
                "flags": flag_list,
                "uncovered_circuits": uncovered,
            });
            value.to_string() + "\n"
        }
        other => return Err(unsupported(other, "quotient")),
    };
    Ok(Output { text, verdict: direct })
}

pub fn shift(config: &Config, perm: &str, frozen: &str, side: Side) -> Result<Output> {
    let p = parse_perm(perm)?;
    let frozen = FreezeSet::parse(frozen, p.n())?;
    let direction = match side {
        Side::Left => Direction::Left,
        Side::Right => Direction::Right,
    };
    let out = apply_shift(&p, frozen.set(), direction);
    match config.format {
        Format::Text => yes(format!("{out}\n")),
        Format::Json => yes(
            json!({ "input": p.to_string(), "frozen": frozen.set(), "output": out.to_string(), "rank": out.rank() })
                .to_string()
                + "\n",
        ),
        other => Err(unsupported(other, "shift")),
    }
}

fn circuit_lines(circuits: &[IndexSet]) -> String {
    circuits.iter().map(|c| format!("{c}\n")).collect()
}

pub fn circuits(config: &Config, perm: Option<&str>, uniform: Option<(usize, usize)>, frozen: &str) -> Result<Output> {
    if let Some(perm) = perm {
        let p = parse_perm(perm)?;
        let mut cs = p.positroid().circuits().to_vec();
        cs.sort();
        return match config.format {
            Format::Text => yes(circuit_lines(&cs)),
            Format::Json => yes(serde_json::to_string(&cs)? + "\n"),
            other => Err(unsupported(other, "circuits")),
        };
    }
    let (k, n) = uniform.expect("clap requires a permutation or --k/--n");
    ensure!((1..=positroid::MAX_GROUND_SET).contains(&n), "n must lie in 1..={}", positroid::MAX_GROUND_SET);
    let frozen = FreezeSet::parse(frozen, n)?;
    let predicted = predicted_circuits(k, n, &frozen)?;
    let sigma = shift_left(&DecoratedPermutation::uniform(k, n), frozen.set());
    let mut actual = sigma.positroid().circuits().to_vec();
    actual.sort();
    let equal = predicted.circuits() == &actual[..];
    let text = match config.format {
        Format::Text => {
            let small: Vec<String> = predicted.small.iter().map(ToString::to_string).collect();
            let mut out = format!(
                "sigma: {sigma}\nfrozen: {frozen}\nsmall circuits: {}\nformula: {predicted}\npredicted circuits: {}\nbrute force: {}\n",
                small.join(" "),
                predicted.circuits().len(),
                if equal { "equal" } else { "different" }
            );
            if !equal {
                out.push_str("brute-force circuits:\n");
                out.push_str(&circuit_lines(&actual));
            }
            out
        }
        Format::Json => {
            json!({
                "k": k,
                "n": n,
                "frozen": frozen.set(),
                "sigma": sigma.to_string(),
                "small": predicted.small_sets(),
                "predicted": predicted.circuits(),
                "brute_force": actual,
                "equal": equal,
            })
            .to_string()
                + "\n"
        }
        other => return Err(unsupported(other, "circuits")),
    };
    Ok(Output { text, verdict: equal })
}

pub fn census(config: &Config, n: usize, k: Option<usize>) -> Result<Output> {
    if config.format == Format::Dot {
        return Err(unsupported(Format::Dot, "census"));
    }
    let limits = limits(config);
    limits.check_long_running(n)?;
    let ks: Vec<usize> = match k {
        Some(k) => vec![k],
        None => (1..=n).collect(),
    };
    let progress = n >= positroid::poset::LONG_RUNNING_FROM;
    let mut rows: Vec<CensusRow> = Vec::with_capacity(ks.len());
    for k in ks {
        let start = Instant::now();
        // one cache entry per row, so an interrupted run resumes where it stopped
        let (row, hit) =
            config.cache.get_or_compute("census", n, Some(k), || Ok(uniform_quotient_census(k, n, &limits)?))?;
        if progress {
            let how = if hit { "cached".to_string() } else { format!("{:.1}s", start.elapsed().as_secs_f64()) };
            eprintln!("census n={n} k={k}: {} quotients, {} missing ({how})", row.total, row.missing);
        }
        rows.push(row);
    }
    let verdict = rows.iter().all(|r| r.shift_exceptions.is_empty());
    let text = match config.format {
        Format::Csv => census_csv(&rows),
        Format::Json => serde_json::to_string(&rows)? + "\n",
        _ => {
            let mut out = format!("{:>3} {:>3} {:>8} {:>14} {:>8}\n", "n", "k", "total", "characterized", "missing");
            for r in &rows {
                writeln!(out, "{:>3} {:>3} {:>8} {:>14} {:>8}", r.n, r.k, r.total, r.characterized, r.missing)?;
            }
            for r in rows.iter().filter(|r| !r.witnesses.is_empty()) {
                let list: Vec<String> = r.witnesses.iter().map(ToString::to_string).collect();
                writeln!(out, "not a left shift of π_{{{},{}}}: {}", r.k, r.n, list.join(" "))?;
            }
            for r in rows.iter().filter(|r| !r.shift_exceptions.is_empty()) {
                let list: Vec<String> = r.shift_exceptions.iter().map(ToString::to_string).collect();
                writeln!(out, "left shifts of π_{{{},{}}} that are not covers: {}", r.k, r.n, list.join(" "))?;
            }
            out
        }
    };
    Ok(Output { text, verdict })
}

fn check_poset_size(config: &Config, n: usize) -> Result<()> {
    limits(config).check(n)?;
    if n >= LARGE_POSET && !config.long_running {
        bail!("the poset on [{n}] is a long-running computation; pass --long-running to allow it");
    }
    Ok(())
}

fn load_poset(config: &Config, n: usize) -> Result<QuotientPoset> {
    check_poset_size(config, n)?;
    let (repr, _) =
        config.cache.get_or_compute("poset", n, None, || Ok(build_poset(n, config.n_cap)?.to_json_repr()))?;
    Ok(QuotientPoset::from_parts(n, repr.elements, repr.covers.into_iter().map(|[a, b]| (a, b)).collect())?)
}

pub fn poset(config: &Config, n: usize) -> Result<Output> {
    let poset = load_poset(config, n)?;
    match config.format {
        Format::Dot => yes(poset.to_dot()),
        Format::Json => {
            let repr: PosetJson = poset.to_json_repr();
            yes(serde_json::to_string(&repr)? + "\n")
        }
        Format::Text => {
            let sizes: Vec<String> = poset.rank_sizes().iter().map(ToString::to_string).collect();
            let mut out = format!(
                "P_{n}: {} elements, {} covers\nrank sizes: {}\nbottom: {}\ntop: {}\n",
                poset.len(),
                poset.covers().len(),
                sizes.join(" "),
                poset.element(poset.bottom()),
                poset.element(poset.top())
            );
            if n <= 4 {
                for k in 0..=n {
                    let members: Vec<String> = (0..poset.len())
                        .filter(|&i| poset.rank(i) == k)
                        .map(|i| poset.element(i).to_string())
                        .collect();
                    writeln!(out, "rank {k}: {}", members.join(" "))?;
                }
            }
            yes(out)
        }
        Format::Csv => Err(unsupported(Format::Csv, "poset")),
    }
}

pub fn mobius(config: &Config, n: usize) -> Result<Output> {
    if !matches!(config.format, Format::Text | Format::Json) {
        return Err(unsupported(config.format, "mobius"));
    }
    check_poset_size(config, n)?;
    let (mu, _) = config.cache.get_or_compute("mobius", n, None, || Ok(load_poset(config, n)?.mobius()))?;
    match config.format {
        Format::Json => yes(json!({ "n": n, "mobius": mu }).to_string() + "\n"),
        _ => yes(format!("{mu}\n")),
    }
}

#[derive(Serialize, Deserialize)]
struct ConjectureReport {
    n: usize,
    containment_violations: Vec<ContainmentViolation>,
    shift: ShiftConjectureReport,
    closure: ClosureReport,
}

pub fn conjectures(config: &Config, n: usize) -> Result<Output> {
    if !matches!(config.format, Format::Text | Format::Json) {
        return Err(unsupported(config.format, "conjectures"));
    }
    check_poset_size(config, n)?;
    let (report, _) = config.cache.get_or_compute("conjectures", n, None, || {
        let poset = load_poset(config, n)?;
        Ok(ConjectureReport {
            n,
            containment_violations: check_necklace_containment(&poset),
            shift: check_shift_conjecture(&poset),
            closure: closure_vs_direct(&poset),
        })
    })?;
    let verdict = report.containment_violations.is_empty() && report.shift.covers_without_witness.is_empty();
    if config.format == Format::Json {
        return Ok(Output { text: serde_json::to_string(&report)? + "\n", verdict });
    }
    let s = &report.shift;
    let c = &report.closure;
    let mut out = String::new();
    writeln!(
        out,
        "necklace containment: {} violations over {} covers",
        report.containment_violations.len(),
        s.covers_checked
    )?;
    for v in &report.containment_violations {
        writeln!(out, "  {} ⋖ {} fails at I_{}", v.lower, v.upper, v.index)?;
    }
    writeln!(out, "covers with a shift witness A ⊆ [n]: {} of {}", s.covers_with_witness, s.covers_checked)?;
    writeln!(out, "covers with a shift witness A ⊆ [k]: {} of {}", s.covers_with_prefix_witness, s.covers_checked)?;
    for (lo, hi) in &s.covers_without_witness {
        writeln!(out, "  no witness: {lo} ⋖ {hi}")?;
    }
    writeln!(
        out,
        "adjacent-rank non-covers that are left shifts: {} ({} with A ⊆ [k])",
        s.noncover_shifts.len(),
        s.noncover_shifts.iter().filter(|x| x.prefix_witness).count()
    )?;
    writeln!(
        out,
        "direct quotient pairs: {}, order pairs: {}, direct only: {}, order only: {}",
        c.direct_pairs,
        c.closure_pairs,
        c.direct_not_in_closure.len(),
        c.closure_not_in_direct.len()
    )?;
    Ok(Output { text: out, verdict })
}

pub fn realize(config: &Config, k: usize, n: usize, points: Option<&str>) -> Result<Output> {
    let points: Vec<BigRational> = match points {
        Some(text) => text
            .split(',')
            .map(|t| t.trim().parse::<BigRational>().map_err(|e| anyhow!("bad point {t:?}: {e}")))
            .collect::<Result<_>>()?,
        None => (1..=n as i64).map(|i| BigRational::from_integer(i.into())).collect(),
    };
    let matrix = realize_uniform(k, n, &points)?;
    let report = RealizationReport::verify(&matrix, &points);
    let verdict = report.holds();
    let text = match config.format {
        Format::Text => {
            let mut out = format!("{matrix}");
            for m in &report.minors {
                writeln!(out, "{}: {} (product {})", m.columns, m.minor, m.product)?;
            }
            writeln!(out, "all minors positive: {}", yes_no(report.all_positive()))?;
            writeln!(out, "minors match the Vandermonde product: {}", yes_no(report.all_match()))?;
            out
        }
        Format::Json => {
            let rows: Vec<Vec<String>> = (0..matrix.rows())
                .map(|r| (0..matrix.cols()).map(|c| matrix.get(r, c).to_string()).collect())
                .collect();
            let minors: Vec<_> = report
                .minors
                .iter()
                .map(
                    |m| json!({ "columns": m.columns, "minor": m.minor.to_string(), "product": m.product.to_string() }),
                )
                .collect();
            json!({
                "k": k,
                "n": n,
                "matrix": rows,
                "minors": minors,
                "all_positive": report.all_positive(),
                "all_match": report.all_match(),
            })
            .to_string()
                + "\n"
        }
        other => return Err(unsupported(other, "realize")),
    };
    Ok(Output { text, verdict })
}
