//! The golden corpus: every cataloged family instantiated on a frozen
//! parameter grid, one JSON-lines file per family with sorted keys and
//! no whitespace variance, so regeneration is bit-exact.

use std::fs;
use std::path::{Path, PathBuf};

use serde_json::Value;

use cqs_core::appendix::{appendix_check, FamilyId, FamilyParams};
use cqs_core::Error;

use crate::{chain_value, num, obj, CorpusCmd, Out};

fn params(pairs: &[(char, i64)]) -> FamilyParams {
    let mut p = FamilyParams::default();
    for &(slot, v) in pairs {
        match slot {
            'r' => p.r = Some(v),
            'a' => p.a = Some(v),
            'b' => p.b = Some(v),
            'c' => p.c = Some(v),
            'n' => p.n = Some(v),
            'm' => p.n2 = Some(v),
            _ => unreachable!(),
        }
    }
    p
}

/// The frozen grid, in file order.
fn grid() -> Vec<(FamilyId, FamilyParams)> {
    let mut cells = Vec::new();
    for r in 3..=6 {
        for a in 0..=3 {
            for b in 0..=3 {
                cells.push((FamilyId::F2r2, params(&[('r', r), ('a', a), ('b', b)])));
            }
        }
    }
    for r in 3..=5 {
        for a in 3..=5 {
            for b in 0..=2 {
                for c in 0..=3 {
                    cells.push((
                        FamilyId::F2ra2,
                        params(&[('r', r), ('a', a), ('b', b), ('c', c)]),
                    ));
                }
            }
        }
    }
    for r in 3..=5 {
        for a in 3..=5 {
            for b in 0..=2 {
                for n in 2..=6 {
                    cells.push((
                        FamilyId::F2ra232,
                        params(&[('r', r), ('a', a), ('b', b), ('n', n)]),
                    ));
                }
            }
        }
    }
    for a in 4..=6 {
        for b in 0..=3 {
            for n in 2..=5 {
                cells.push((FamilyId::F2a232, params(&[('a', a), ('b', b), ('n', n)])));
            }
        }
    }
    for a in 3..=9 {
        cells.push((FamilyId::TypeII, params(&[('a', a)])));
        cells.push((FamilyId::TypeIII, params(&[('a', a)])));
        cells.push((FamilyId::TypeIV, params(&[('a', a)])));
    }
    for r in 3..=6 {
        for b in 4..=7 {
            cells.push((FamilyId::F4rb2, params(&[('r', r), ('b', b)])));
        }
    }
    for r in 3..=5 {
        for b in 3..=8 {
            for n in 2..=6 {
                cells.push((FamilyId::F4rb232, params(&[('r', r), ('b', b), ('n', n)])));
            }
        }
    }
    for r in 3..=6 {
        for a in 4..=6 {
            for n in 2..=7 {
                cells.push((FamilyId::F2ar323, params(&[('r', r), ('a', a), ('n', n)])));
            }
        }
    }
    for r in 3..=5 {
        for b in 3..=8 {
            for n in 2..=4 {
                for m in 2..=5 {
                    cells.push((
                        FamilyId::F323rb232,
                        params(&[('r', r), ('b', b), ('n', n), ('m', m)]),
                    ));
                }
            }
        }
    }
    cells
}

fn params_value(p: &FamilyParams) -> Value {
    obj(p
        .to_sorted_pairs()
        .into_iter()
        .map(|(k, v)| (k, num(v)))
        .collect())
}

/// Render a family cell as canonical JSON lines (one per resolution).
fn cell_lines(family: FamilyId, p: &FamilyParams) -> Result<Vec<String>, Error> {
    let report = appendix_check(family, p)?;
    if !report.exact_match() {
        return Err(Error::Internal(format!(
            "family {} at {:?} disagrees with its rows",
            family.name(),
            p
        )));
    }
    let mut lines = Vec::new();
    for row in &report.rows {
        let value = obj(vec![
            ("family", Value::String(family.name().to_string())),
            ("params", params_value(p)),
            ("zcf", chain_value(row.zcf.entries())),
            ("notation", Value::String(row.expected_notation.clone())),
        ]);
        lines.push(serde_json::to_string(&value).expect("serialize"));
    }
    Ok(lines)
}

fn generate() -> Result<Vec<(String, String)>, Error> {
    let mut files: Vec<(String, Vec<String>)> = Vec::new();
    for (family, p) in grid() {
        let name = format!("{}.jsonl", family.name());
        let lines = cell_lines(family, &p)?;
        match files.iter_mut().find(|(n, _)| *n == name) {
            Some((_, all)) => all.extend(lines),
            None => files.push((name, lines)),
        }
    }
    Ok(files
        .into_iter()
        .map(|(name, lines)| {
            let mut body = lines.join("\n");
            body.push('\n');
            (name, body)
        })
        .collect())
}

fn regen(dir: &Path) -> Result<u8, Error> {
    fs::create_dir_all(dir)
        .map_err(|e| Error::Validation(format!("cannot create {}: {}", dir.display(), e)))?;
    for (name, body) in generate()? {
        let path = dir.join(&name);
        fs::write(&path, body)
            .map_err(|e| Error::Validation(format!("cannot write {}: {}", path.display(), e)))?;
    }
    Ok(0)
}

fn check(dir: &Path, out: &mut Out) -> Result<u8, Error> {
    let mut differences = Vec::new();
    for (name, expected) in generate()? {
        let path: PathBuf = dir.join(&name);
        match fs::read_to_string(&path) {
            Err(e) => {
                return Err(Error::Validation(format!(
                    "cannot read {}: {}",
                    path.display(),
                    e
                )))
            }
            Ok(actual) if actual == expected => {}
            Ok(actual) => {
                let diff_at = expected
                    .lines()
                    .zip(actual.lines())
                    .position(|(e, a)| e != a)
                    .map(|i| i + 1)
                    .unwrap_or_else(|| expected.lines().count().min(actual.lines().count()) + 1);
                differences.push((name, diff_at));
            }
        }
    }
    for (name, line) in &differences {
        out.line(
            format!("corpus diff: {} at line {}", name, line),
            obj(vec![
                ("file", Value::String(name.clone())),
                ("first_diff_line", num(*line as i64)),
            ]),
        );
    }
    if differences.is_empty() {
        out.line(
            "corpus matches".to_string(),
            obj(vec![("status", Value::String("match".to_string()))]),
        );
        Ok(0)
    } else {
        Ok(2)
    }
}

pub fn run(cmd: CorpusCmd, out: &mut Out) -> Result<u8, Error> {
    match cmd {
        CorpusCmd::Check { dir } => check(&dir, out),
        CorpusCmd::Regen { dir } => regen(&dir),
    }
}
