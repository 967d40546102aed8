//! Acceptance checks. Runs without the libtest harness and prints one
//! PASS/FAIL line per criterion; exits non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use posetqsym::classes::{class_c_membership, count_njoinfree, enumerate_all_posets, enumerate_rooted_trees, is_njoinfree_scan};
use posetqsym::composition::Composition;
use posetqsym::partitions::{gamma, gamma_strict};
use posetqsym::poset::{LabeledPoset, Poset};
use posetqsym::qsym::QSymElement;
use posetqsym::verify::{counterexample_posets, counterexample_series, property_suite, verify_injectivity, ScanClass};

type Outcome = Result<String, String>;

fn qsym(terms: &[(&[usize], i64)]) -> QSymElement {
    QSymElement::from_terms(terms.iter().map(|(a, c)| (Composition::new(a.to_vec()).unwrap(), *c)))
}

fn vee_examples() -> Outcome {
    let vee = Poset::from_covers(3, &[(0, 1), (0, 2)]).map_err(|e| e.to_string())?;
    let strict = gamma_strict(&vee);
    let want = qsym(&[(&[1, 1, 1], 2), (&[1, 2], 1)]);
    if strict != want {
        return Err(format!("Γ^<(∨) = {strict}"));
    }
    let lp = LabeledPoset::new(vee, vec![2, 1, 3]).map_err(|e| e.to_string())?;
    let g = gamma(&lp);
    let want = qsym(&[(&[1, 1, 1], 2), (&[1, 2], 1), (&[2, 1], 1)]);
    if g != want {
        return Err(format!("Γ(∨,ω′) = {g}"));
    }
    Ok(format!("Γ^<(∨) = {strict}; Γ(∨,ω′) = {g}"))
}

fn counterexample() -> Outcome {
    let (left, right) = counterexample_posets();
    if left.is_isomorphic(&right).map_err(|e| e.to_string())? {
        return Err("fixture posets are isomorphic".into());
    }
    let (gl, gr) = (gamma_strict(&left), gamma_strict(&right));
    let expected = counterexample_series();
    if expected.num_terms() != 31 {
        return Err(format!("embedded series has {} terms", expected.num_terms()));
    }
    if gl != gr || gl != expected {
        return Err(format!("left {gl}\nright {gr}"));
    }
    for (alpha, c) in [(vec![1; 7], 66), (vec![2, 2, 1, 1, 1], 9), (vec![1, 1, 2, 1, 1, 1], 24)] {
        let a = Composition::new(alpha).unwrap();
        if gl.coefficient(&a) != BigInt::from(c) {
            return Err(format!("coefficient of M_{a} is {}", gl.coefficient(&a)));
        }
    }
    Ok("non-isomorphic, identical Γ^<, all 31 terms match".into())
}

fn njoinfree_counts() -> Outcome {
    let counts = count_njoinfree(8).map_err(|e| e.to_string())?;
    if counts != [1, 2, 5, 14, 40, 121, 373, 1184] {
        return Err(format!("counts {counts:?}"));
    }
    Ok(format!("counts {counts:?}"))
}

/// Rooted trees on `n` vertices from every parent array `p[i] < i`,
/// canonicalized by sorted child encodings.
fn brute_force_tree_count(n: usize) -> usize {
    fn encode(v: usize, children: &[Vec<usize>]) -> String {
        let mut subs: Vec<String> = children[v].iter().map(|&c| encode(c, children)).collect();
        subs.sort();
        format!("({})", subs.concat())
    }
    let mut seen = BTreeSet::new();
    let mut parent = vec![0usize; n];
    fn go(i: usize, n: usize, parent: &mut Vec<usize>, seen: &mut BTreeSet<String>) {
        if i == n {
            let mut children = vec![Vec::new(); n];
            for v in 1..n {
                children[parent[v]].push(v);
            }
            seen.insert(encode(0, &children));
            return;
        }
        for p in 0..i {
            parent[i] = p;
            go(i + 1, n, parent, seen);
        }
    }
    go(1, n, &mut parent, &mut seen);
    seen.len()
}

fn tree_injectivity() -> Outcome {
    let mut counts = Vec::new();
    for n in 1..=9 {
        let (ours, brute) = (enumerate_rooted_trees(n).len(), brute_force_tree_count(n));
        if ours != brute {
            return Err(format!("n={n}: enumerator gives {ours}, brute force {brute}"));
        }
        counts.push(ours);
    }
    let report = verify_injectivity(ScanClass::RootedTrees, 9, false).map_err(|e| e.to_string())?;
    if !report.pass {
        return Err(report.body());
    }
    Ok(format!("tree counts {counts:?}, {} trees, 0 collisions", report.instances))
}

fn njoinfree_injectivity() -> Outcome {
    let report = verify_injectivity(ScanClass::NjoinFree, 7, false).map_err(|e| e.to_string())?;
    if !report.pass {
        return Err(report.body());
    }
    Ok(format!("{} posets, 0 collisions", report.instances))
}

fn n_tie_equivalence() -> Outcome {
    let mut sizes = Vec::new();
    for n in 0..=6 {
        let level = enumerate_all_posets(n).map_err(|e| e.to_string())?;
        for p in &level {
            if class_c_membership(p).is_some() != is_njoinfree_scan(p) {
                return Err(format!("recognizers disagree on covers {:?}", p.covers()));
            }
        }
        sizes.push(level.len());
    }
    if sizes != [1, 1, 2, 5, 16, 63, 318] {
        return Err(format!("class counts {sizes:?}"));
    }
    Ok(format!("class counts {sizes:?}, recognizers agree"))
}

fn properties() -> Outcome {
    let reports = property_suite(0, 1000).map_err(|e| e.to_string())?;
    let failed: Vec<String> = reports.iter().filter(|r| !r.pass).map(|r| r.body()).collect();
    if !failed.is_empty() {
        return Err(failed.concat());
    }
    let total: usize = reports.iter().map(|r| r.instances).sum();
    Ok(format!("{} sections, {total} instances, 0 violations", reports.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("1 vee examples", vee_examples),
        ("2 counterexample pair", counterexample),
        ("3 (N,⋈)-free counts", njoinfree_counts),
        ("4 rooted-tree injectivity", tree_injectivity),
        ("5 (N,⋈)-free injectivity", njoinfree_injectivity),
        ("6 N-tie recognizers", n_tie_equivalence),
        ("7 property suite", properties),
    ];
    let mut ok = true;
    for (name, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("PASS criterion {name} ({secs:.2}s): {msg}"),
            Err(msg) => {
                ok = false;
                println!("FAIL criterion {name} ({secs:.2}s): {msg}");
            }
        }
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
