//! Parallel execution of the named verification suites.
//!
//! Registry runs are split into chunks of sample indices; each chunk is
//! evaluated independently and the tallies merged. Merging is associative and
//! order-independent, so reports do not depend on the thread count.

use std::fmt;
use std::str::FromStr;

use hypmetric_core::harness::{
    case_by_id, corpus_plan, distortion_checks, evaluate_range, section_cases, sharpness_suite, DomainProfile,
    InequalityCase, Section, SolverConfigs, Tally, VerificationReport,
};
use hypmetric_core::{Domain, Error, Result};
use rayon::prelude::*;

/// Sample indices evaluated by one task.
const CHUNK: u64 = 250;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Suite {
    All,
    Section2,
    Section3,
    Section4,
    Sharpness,
    Case(String),
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Ok(match s {
            "all" => Suite::All,
            "section2" => Suite::Section2,
            "section3" => Suite::Section3,
            "section4" => Suite::Section4,
            "sharpness" => Suite::Sharpness,
            id => {
                case_by_id(id).map_err(|_| format!("no suite or registry case named `{id}`"))?;
                Suite::Case(id.into())
            }
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Suite::All => f.write_str("all"),
            Suite::Section2 => f.write_str("section2"),
            Suite::Section3 => f.write_str("section3"),
            Suite::Section4 => f.write_str("section4"),
            Suite::Sharpness => f.write_str("sharpness"),
            Suite::Case(id) => f.write_str(id),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub samples: usize,
    pub seeds: Vec<u64>,
    pub cfgs: SolverConfigs,
    /// Restricts registry cases to this domain instead of the corpus.
    pub domain: Option<Domain>,
}

/// Runs `cases` on each `(domain, case indices)` entry for every seed.
/// Reports come out in plan order, then seed order, then case order.
pub fn run_registry(
    cases: &[InequalityCase],
    plan: &[(Domain, Vec<usize>)],
    samples: usize,
    seeds: &[u64],
    cfgs: &SolverConfigs,
) -> Result<Vec<VerificationReport>> {
    let profiles = plan
        .par_iter()
        .map(|(g, _)| DomainProfile::for_domain(g))
        .collect::<Result<Vec<_>>>()?;
    let mut jobs = Vec::new();
    for gi in 0..plan.len() {
        for &seed in seeds {
            let mut start = 0;
            while start < samples as u64 {
                let end = (start + CHUNK).min(samples as u64);
                jobs.push((gi, seed, start..end));
                start = end;
            }
        }
    }
    let tallies = jobs
        .par_iter()
        .map(|(gi, seed, range)| {
            let (g, idx) = &plan[*gi];
            let refs: Vec<&InequalityCase> = idx.iter().map(|&i| &cases[i]).collect();
            evaluate_range(&refs, g, *seed, cfgs, &profiles[*gi], range.clone())
        })
        .collect::<Result<Vec<_>>>()?;

    let mut out = Vec::new();
    let mut next = jobs.iter().zip(tallies).peekable();
    for (gi, (g, idx)) in plan.iter().enumerate() {
        let domain = g.to_string();
        for &seed in seeds {
            let mut merged: Vec<Tally> = idx.iter().map(|_| Tally::new()).collect();
            while let Some(((_, _, _), part)) = next.next_if(|((j, s, _), _)| *j == gi && *s == seed) {
                merged = merged.into_iter().zip(part).map(|(a, b)| a.merge(b)).collect();
            }
            for (t, &i) in merged.into_iter().zip(idx) {
                out.push(t.into_report(cases[i].id, &domain, seed));
            }
        }
    }
    Ok(out)
}

fn registry_reports(section: Option<Section>, run: &RunConfig) -> Result<Vec<VerificationReport>> {
    let cases = section_cases(section);
    let plan = match &run.domain {
        Some(g) => {
            let idx: Vec<usize> = (0..cases.len()).filter(|&i| cases[i].scope.accepts(g)).collect();
            vec![(g.clone(), idx)]
        }
        None => corpus_plan(&cases),
    };
    run_registry(&cases, &plan, run.samples, &run.seeds, &run.cfgs)
}

fn case_reports(id: &str, run: &RunConfig) -> Result<Vec<VerificationReport>> {
    let case = case_by_id(id)?;
    let plan = match &run.domain {
        Some(g) => {
            case.check_scope(g)?;
            vec![(g.clone(), vec![0])]
        }
        None => corpus_plan(std::slice::from_ref(&case)),
    };
    run_registry(std::slice::from_ref(&case), &plan, run.samples, &run.seeds, &run.cfgs)
}

fn distortion_reports(run: &RunConfig) -> Result<Vec<VerificationReport>> {
    let checks = distortion_checks();
    let jobs: Vec<_> = checks.iter().flat_map(|c| run.seeds.iter().map(move |&s| (c, s))).collect();
    jobs.par_iter().map(|(c, seed)| c.run(run.samples, *seed, &run.cfgs)).collect()
}

pub fn run_suite(suite: &Suite, run: &RunConfig) -> Result<Vec<VerificationReport>> {
    if run.domain.is_some() && matches!(suite, Suite::Section4 | Suite::Sharpness | Suite::All) {
        return Err(Error::Unsupported(format!("suite {suite} runs on fixed domains; drop --domain")));
    }
    match suite {
        Suite::Section2 => registry_reports(Some(Section::Two), run),
        Suite::Section3 => registry_reports(Some(Section::Three), run),
        Suite::Section4 => distortion_reports(run),
        Suite::Sharpness => sharpness_suite(&run.cfgs),
        Suite::Case(id) => case_reports(id, run),
        Suite::All => {
            let mut out = registry_reports(None, run)?;
            out.extend(distortion_reports(run)?);
            out.extend(sharpness_suite(&run.cfgs)?);
            Ok(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use hypmetric_core::harness::run_cases;

    fn config(samples: usize) -> RunConfig {
        RunConfig {
            samples,
            seeds: vec![42],
            cfgs: SolverConfigs::harness(),
            domain: None,
        }
    }

    #[test]
    fn suite_names() {
        assert_eq!("all".parse::<Suite>().unwrap(), Suite::All);
        assert_eq!("s-le-2p".parse::<Suite>().unwrap(), Suite::Case("s-le-2p".into()));
        assert!("nonsense".parse::<Suite>().is_err());
        for s in ["all", "section2", "section3", "section4", "sharpness", "jstar-le-s"] {
            assert_eq!(s.parse::<Suite>().unwrap().to_string(), s);
        }
    }

    #[test]
    fn chunked_run_matches_sequential() {
        let g = Domain::unit_square();
        let cases = section_cases(Some(Section::Three));
        let idx: Vec<usize> = (0..cases.len()).filter(|&i| cases[i].scope.accepts(&g)).collect();
        let refs: Vec<&InequalityCase> = idx.iter().map(|&i| &cases[i]).collect();
        let seq = run_cases(&refs, &g, 600, 5, &SolverConfigs::harness()).unwrap();
        let par = run_registry(&cases, &[(g, idx)], 600, &[5], &SolverConfigs::harness()).unwrap();
        assert_eq!(seq, par);
    }

    #[test]
    fn case_on_out_of_scope_domain_is_an_error() {
        let mut run = config(10);
        run.domain = Some(Domain::punctured(hypmetric_core::Point::origin(2)));
        let err = run_suite(&Suite::Case("convex-s-le-v".into()), &run).unwrap_err();
        assert!(matches!(err, Error::ScopeMismatch { .. }));
    }

    #[test]
    fn single_case_covers_scoped_corpus() {
        let reports = run_suite(&Suite::Case("ball-s-le-p".into()), &config(50)).unwrap();
        assert_eq!(reports.len(), 1);
        assert!(reports[0].passed());
        assert_eq!(reports[0].samples, 50);
    }
}
