//! One function per subcommand, each returning a [`Report`].

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::Path;

use num_bigint::BigUint;
use serde_json::{json, Map, Value};

use grain_core::algebra::field::vector_at;
use grain_core::algebra::linear::{parse_outer_spec, read_parity_check, PrimeLinearCode};
use grain_core::algebra::{group_parse, hamming_code, FiniteAbelianGroup, GroupElement};
use grain_core::bounds::{upper_bound, BoundReport};
use grain_core::cardinality::{
    beta_profile, count_via_dual, cwe_macwilliams, hwe_direct, mineral_count_from_hwe, HammingWeightEnumerator,
};
use grain_core::code::{read_code, verify, write_code};
use grain_core::coloring::{
    build_graph, gamma_coloring, greedy_color, group_partition_coloring, published_seven_coloring, read_coloring,
    write_coloring, Coloring,
};
use grain_core::constructions::{
    colored_enumerate, default_symbol_map, grain_lift, lifted_enumerate, ColoredCodeSpec, GrainLift, LiftedTernarySpec,
    Membership,
};
use grain_core::group_code::{best_group_code, enumerate_code, GroupCodeSpec};
use grain_core::{BitWord, CodeBook, ErrorModel};

use crate::report::{big, big_signed, Report};
use crate::{Cardinality, Cli, Color, Command, Construct, Failure, Model, OutArg, OuterArg};

type Outcome = Result<Report, Failure>;

/// Longest length the single-error table reports.
const TABLE_MAX_N: u32 = 26;

pub fn run(cli: &Cli) -> Outcome {
    let cap = cli.cap;
    match &cli.command {
        Command::Bound { n, t, closed_form } => bound(*n, *t, *closed_form),
        Command::Table1 { n_min, n_max } => table1(*n_min, *n_max, cap),
        Command::Construct(c) => construct(c, cap),
        Command::Verify { code, t, model } => verify_code(code, *t, *model),
        Command::Color(c) => color(c, cap),
        Command::Cardinality(c) => cardinality(c, cap),
        Command::BestGroup { n } => best_group(*n),
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn open(path: &Path) -> Result<BufReader<File>, Failure> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn path_str(path: &Path) -> String {
    path.display().to_string()
}

fn parse_residue(s: &str) -> Result<Vec<u32>, Failure> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<u32>()
                .map_err(|_| usage(format!("invalid residue {s:?}")))
        })
        .collect()
}

fn bound(n: u32, t: u32, closed_form: bool) -> Outcome {
    let b = BoundReport::compute(n, t)?;
    let mut r = Report::new("bound")
        .param("n", n)
        .param("t", t)
        .param("closed_form", closed_form);
    r.field("exact_sum", b.exact_sum.to_string());
    r.field("bound", big_signed(&b.even_floor_bound));
    if closed_form {
        r.field(
            "closed_form",
            b.closed_form_bound.as_ref().map_or(Value::Null, big_signed),
        );
    }
    Ok(r)
}

fn outer_hwe(code: &PrimeLinearCode, cap: u128) -> grain_core::Result<HammingWeightEnumerator> {
    if code.rank() <= code.dimension() {
        Ok(cwe_macwilliams(code, cap)?.hamming())
    } else {
        hwe_direct(code, cap)
    }
}

fn table1(n_min: u32, n_max: u32, cap: u128) -> Outcome {
    if n_min < 2 || n_min > n_max || n_max > TABLE_MAX_N {
        return Err(usage(format!("need 2 <= n-min <= n-max <= {TABLE_MAX_N}")));
    }
    let mut rows = Vec::new();
    for n in n_min..=n_max {
        let (g, mut lower) = best_group_code(n)?;
        let mut source = format!("group {g}");
        // the block map over a ternary Hamming code of length (3^r - 1)/2 lifts to length 3^r
        for r in 2.. {
            let len = 3u32.pow(r);
            if len > n {
                break;
            }
            if len == n {
                let hamming = hamming_code(3, r as usize)?;
                let lifted = mineral_count_from_hwe(&outer_hwe(&hamming, cap)?) * 2u32;
                if lifted >= lower {
                    lower = lifted;
                    source = format!("gamma hamming:3:{r}");
                }
            }
        }
        let upper = upper_bound(n, 1)?;
        rows.push(vec![
            Value::from(n),
            big(&lower),
            big_signed(&upper),
            Value::from(source),
        ]);
    }
    let mut r = Report::new("table1").param("n_min", n_min).param("n_max", n_max);
    r.table(&["n", "lower", "upper", "lower_source"], rows);
    Ok(r)
}

/// Writes `code` to `out` or inlines its words, and records its shape.
fn emit_code(r: &mut Report, code: &CodeBook, out: &OutArg) -> Result<(), Failure> {
    r.field("length", code.length());
    r.field("size", code.len());
    match &out.out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path).map_err(|e| usage(format!("{}: {e}", path.display())))?);
            write_code(code, &mut w)?;
            w.flush()?;
            r.field("out", path_str(path));
        }
        None => {
            let words: Vec<Value> = code.iter().map(|w| Value::from(w.to_string())).collect();
            r.field("words", words);
        }
    }
    Ok(())
}

fn lifted_if(code: CodeBook, lift: bool) -> grain_core::Result<CodeBook> {
    if lift {
        grain_lift(&code)
    } else {
        Ok(code)
    }
}

fn group_residue(g: &FiniteAbelianGroup, s: &str) -> Result<GroupElement, Failure> {
    if s.trim() == "0" {
        Ok(g.zero())
    } else {
        Ok(g.parse_element(s)?)
    }
}

fn outer_code(o: &OuterArg, default_t: u32) -> grain_core::Result<PrimeLinearCode> {
    parse_outer_spec(&o.outer, o.t.unwrap_or(default_t))
}

fn load_coloring(path: &Path) -> Result<Coloring, Failure> {
    Ok(read_coloring(open(path)?)?)
}

fn construct(c: &Construct, cap: u128) -> Outcome {
    match c {
        Construct::Group {
            group,
            residue,
            lift,
            out,
        } => {
            let g = group_parse(group)?;
            let a = group_residue(&g, residue)?;
            let spec = GroupCodeSpec::new(&g, a.clone())?;
            let code = lifted_if(enumerate_code(&spec, cap)?, *lift)?;
            let mut r = Report::new("construct group")
                .param("group", g.to_string())
                .param("residue", a.to_string())
                .param("lift", *lift);
            emit_code(&mut r, &code, out)?;
            Ok(r)
        }
        Construct::Gamma { outer, lift, out } => {
            let t = outer.t.unwrap_or(1);
            let code = outer_code(outer, t)?;
            let spec = ColoredCodeSpec::new(gamma_coloring(t), code)?;
            let book = lifted_if(colored_enumerate(&spec, cap)?, *lift)?;
            let mut r = Report::new("construct gamma")
                .param("outer", outer.outer.clone())
                .param("t", t)
                .param("lift", *lift);
            emit_code(&mut r, &book, out)?;
            Ok(r)
        }
        Construct::Colored {
            coloring,
            outer,
            lift,
            check,
            out,
        } => {
            let col = load_coloring(coloring)?;
            let t = outer.t.unwrap_or(col.t());
            let spec = ColoredCodeSpec::new(col, outer_code(outer, t)?)?;
            let mut r = Report::new("construct colored")
                .param("coloring", path_str(coloring))
                .param("outer", outer.outer.clone())
                .param("t", t)
                .param("lift", *lift);
            match check {
                Some(word) => {
                    let x: BitWord = word.parse()?;
                    r = r.param("check", word.clone());
                    let member = if *lift {
                        GrainLift(spec).contains(&x)?
                    } else {
                        spec.contains(&x)?
                    };
                    r.field("member", member);
                }
                None => {
                    let book = lifted_if(colored_enumerate(&spec, cap)?, *lift)?;
                    emit_code(&mut r, &book, out)?;
                }
            }
            Ok(r)
        }
        Construct::Lifted {
            matrix,
            residue,
            lift,
            out,
        } => {
            let base = read_parity_check(open(matrix)?, 1)?;
            let b = match residue {
                Some(s) => parse_residue(s)?,
                None => vec![0; base.redundancy()],
            };
            let spec = LiftedTernarySpec::new(base, b.clone())?;
            let book = lifted_if(lifted_enumerate(&spec, cap)?, *lift)?;
            let mut r = Report::new("construct lifted")
                .param("matrix", path_str(matrix))
                .param("residue", join(&b))
                .param("lift", *lift);
            emit_code(&mut r, &book, out)?;
            Ok(r)
        }
    }
}

fn join(v: &[u32]) -> String {
    v.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

fn verify_code(path: &Path, t: u32, model: Model) -> Outcome {
    let code = read_code(open(path)?)?;
    let m = match model {
        Model::Grain => ErrorModel::grain(t),
        Model::Mineral => ErrorModel::mineral(t),
        Model::Random => ErrorModel::random(t),
    };
    let mut r = Report::new("verify")
        .param("code", path_str(path))
        .param("t", t)
        .param("model", m.kind.to_string());
    r.field("length", code.length());
    r.field("size", code.len());
    match verify(&code, m) {
        Ok(()) => r.verdict(true),
        Err(c) => {
            r.verdict(false);
            r.field(
                "witness",
                json!({
                    "first": c.first.to_string(),
                    "second": c.second.to_string(),
                    "shared": c.shared.to_string(),
                }),
            );
        }
    }
    Ok(r)
}

fn coloring_fields(r: &mut Report, c: &Coloring) {
    r.field("m", c.m());
    r.field("t", c.t());
    r.field("colors", c.color_count());
    r.field("sizes", c.class_sizes());
}

fn emit_coloring(r: &mut Report, c: &Coloring, out: &OutArg) -> Result<(), Failure> {
    coloring_fields(r, c);
    match &out.out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path).map_err(|e| usage(format!("{}: {e}", path.display())))?);
            write_coloring(c, &mut w)?;
            w.flush()?;
            r.field("out", path_str(path));
        }
        None => {
            let classes: Vec<Value> = c.classes().iter().map(|k| Value::from(k.clone())).collect();
            r.field("classes", classes);
        }
    }
    Ok(())
}

fn color(c: &Color, cap: u128) -> Outcome {
    match c {
        Color::Search {
            m,
            t,
            seed,
            restarts,
            out,
        } => {
            let graph = build_graph(*t, *m, cap)?;
            let found = greedy_color(&graph, *seed, *restarts);
            let mut r = Report::new("color search")
                .param("m", *m)
                .param("t", *t)
                .param("seed", *seed)
                .param("restarts", *restarts);
            emit_coloring(&mut r, &found, out)?;
            r.verdict(found.is_valid(&graph)?);
            Ok(r)
        }
        Color::Verify { file } => {
            let col = load_coloring(file)?;
            let graph = build_graph(col.t(), col.m(), cap)?;
            let mut r = Report::new("color verify").param("file", path_str(file));
            coloring_fields(&mut r, &col);
            match col.violation(&graph)? {
                None => r.verdict(true),
                Some(bad) => {
                    r.verdict(false);
                    r.field("violation", json!({"u": bad.u, "v": bad.v, "color": bad.color}));
                }
            }
            Ok(r)
        }
        Color::Published { out } => {
            let mut r = Report::new("color published");
            emit_coloring(&mut r, &published_seven_coloring(), out)?;
            Ok(r)
        }
        Color::Group { m, out } => {
            let mut r = Report::new("color group").param("m", *m);
            emit_coloring(&mut r, &group_partition_coloring(*m)?, out)?;
            Ok(r)
        }
    }
}

/// Checks what [`ColoredCodeSpec::new`] checks, minus its length limit.
fn check_colored(col: &Coloring, outer: &PrimeLinearCode, cap: u128) -> Result<(), Failure> {
    if col.color_count() != outer.p() as usize {
        return Err(usage(format!(
            "{} colour classes but the outer code is over GF({})",
            col.color_count(),
            outer.p()
        )));
    }
    if outer.designed_t() < col.t() {
        return Err(usage(format!(
            "outer code corrects {} symbol errors, colouring needs {}",
            outer.designed_t(),
            col.t()
        )));
    }
    if let Some(bad) = col.violation(&build_graph(col.t(), col.m(), cap)?)? {
        return Err(usage(format!(
            "colouring is not proper: {} and {} share colour {}",
            bad.u, bad.v, bad.color
        )));
    }
    Ok(())
}

fn cardinality(c: &Cardinality, cap: u128) -> Outcome {
    match c {
        Cardinality::Gamma { outer, lift } => {
            let t = outer.t.unwrap_or(1);
            let code = outer_code(outer, t)?;
            let mineral = mineral_count_from_hwe(&outer_hwe(&code, cap)?);
            let mut r = Report::new("cardinality gamma")
                .param("outer", outer.outer.clone())
                .param("t", t)
                .param("lift", *lift);
            r.field("length", 2 * code.length() + usize::from(*lift));
            r.field("mineral", big(&mineral));
            if *lift {
                r.field("grain", big(&(mineral * 2u32)));
            }
            Ok(r)
        }
        Cardinality::Colored { coloring, outer, lift } => {
            let col = load_coloring(coloring)?;
            let t = outer.t.unwrap_or(col.t());
            let code = outer_code(outer, t)?;
            check_colored(&col, &code, cap)?;
            let sizes = col.class_sizes();
            let mut by_symbol = vec![0; sizes.len()];
            for (class, &s) in default_symbol_map(&sizes).iter().enumerate() {
                by_symbol[s as usize] = sizes[class];
            }
            let mut count = count_via_dual(&code, &by_symbol, cap)?;
            if *lift {
                count *= 2u32;
            }
            let mut r = Report::new("cardinality colored")
                .param("coloring", path_str(coloring))
                .param("outer", outer.outer.clone())
                .param("t", t)
                .param("lift", *lift);
            r.field("length", col.m() * code.length() + usize::from(*lift));
            r.field("count", big(&count));
            Ok(r)
        }
        Cardinality::Fourier { matrix, outer, residue } => {
            let (base, mut r) = match (matrix, outer) {
                (Some(path), _) => (
                    read_parity_check(open(path)?, 1)?,
                    Report::new("cardinality fourier").param("matrix", path_str(path)),
                ),
                (None, Some(spec)) => (
                    parse_outer_spec(spec, 1)?,
                    Report::new("cardinality fourier").param("outer", spec.clone()),
                ),
                (None, None) => return Err(usage("need --matrix or --outer")),
            };
            r = r.param("residue", residue.clone());
            let profile = beta_profile(&base, cap)?;
            r.field("length", 2 * base.length());
            if residue == "all" {
                let rank = base.redundancy();
                let counts = profile.counts()?;
                let map: Map<String, Value> = counts
                    .iter()
                    .enumerate()
                    .map(|(i, c)| (join(&vector_at(i, 3, rank)), big(c)))
                    .collect();
                let total: BigUint = counts.iter().sum();
                r.field("total", big(&total));
                r.field("counts", Value::Object(map));
            } else {
                let b = parse_residue(residue)?;
                r.field("count", big(&profile.count(&b)?));
            }
            Ok(r)
        }
    }
}

fn best_group(n: u32) -> Outcome {
    let (g, count) = best_group_code(n)?;
    let mut r = Report::new("best-group").param("n", n);
    r.field("group", g.to_string());
    r.field("length", n);
    r.field("cardinality", big(&count));
    Ok(r)
}
