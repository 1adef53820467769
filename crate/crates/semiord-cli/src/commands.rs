//! Subcommand handlers: resolve names against the workspace, call the
//! library, and shape one flat result record per invocation.

use semiord::{
    anomalous_pair_at_depth, approximate_supremum, archimedean_floor, check_axioms_on_sample,
    check_field_laws, compare, embed, invert, morphism_scalar, multiply, parse_element, positivize,
    precedes, real_of, sample_elements, sign, AnomalousVerdict, Backend, Budget,
    ComparisonOutcome, DyadicEnclosure, Element, FormalSum, Morphism, PointedBackend,
    PointedFamily, PrecedesVerdict, RealStream,
};

use crate::args::{Cli, Command};
use crate::output::Record;
use crate::workspace::Workspace;
use crate::CliError;

pub fn dispatch(cli: &Cli) -> Result<Record, CliError> {
    let budget = Budget::new(cli.budget_level, cli.budget_gallop)?;
    let workspace = match &cli.workspace {
        Some(path) => Workspace::load(path, budget.max_gallop())?,
        None => Workspace::empty(),
    };
    match &cli.command {
        Command::Validate { backend, count } => {
            let backend = workspace.backend(backend)?;
            let sample = sample_elements(&backend, *count, cli.seed);
            let report = check_axioms_on_sample(&backend, &sample)?;
            Ok(Record::new()
                .str("backend", backend.to_string())
                .uint("elements", report.elements as u64)
                .uint("pairs", report.pairs_checked as u64)
                .uint("triples", report.triples_checked as u64)
                .uint("violations", report.violations.len() as u64)
                .bool("passed", report.passed()))
        }
        Command::Cmp { backend, x, y } => {
            let (x, y) = element_pair(&workspace, backend, x, y)?;
            Ok(outcome_record(compare(&x, &y, &budget)?))
        }
        Command::Sign { backend, x } => {
            let x = one_element(&workspace, backend, x)?;
            Ok(Record::new().str("sign", sign(&x).to_string()))
        }
        Command::Embed {
            backend,
            base,
            level,
            x,
        } => {
            let pointed = pointed_parts(&workspace, backend, base, &budget)?;
            let x = parse_element(pointed.backend(), x)?;
            let enclosure = embed(&pointed, &x, *level)?;
            Ok(Record::new()
                .str("mantissa", enclosure.lo().mantissa().to_string())
                .uint("level", enclosure.level() as u64))
        }
        Command::Anomalous {
            backend,
            x,
            y,
            depth,
        } => {
            let (x, y) = element_pair(&workspace, backend, x, y)?;
            Ok(verdict_record(anomalous_pair_at_depth(
                &x, &y, *depth, &budget,
            )?))
        }
        Command::Floor { backend, x, y } => {
            let (x, y) = element_pair(&workspace, backend, x, y)?;
            let floor = archimedean_floor(&x, &y, &budget)?;
            Ok(Record::new().str("floor", floor.to_string()))
        }
        Command::Positivize { backend, x, step } => {
            let (x, step) = element_pair(&workspace, backend, x, step)?;
            let count = positivize(&x, &step, &budget)?;
            Ok(Record::new().str("count", count.to_string()))
        }
        Command::CoprodCmp {
            members,
            family,
            x,
            y,
        } => {
            let family = workspace.family(family.as_deref(), members, budget.max_gallop())?;
            let x = parse_sum(&family, x)?;
            let y = parse_sum(&family, y)?;
            let record = match precedes(&family, &x, &y, &budget)? {
                PrecedesVerdict::Precedes(witness) => Record::new()
                    .str("verdict", "Precedes")
                    .uint("witness", witness as u64),
                PrecedesVerdict::Succeeds(witness) => Record::new()
                    .str("verdict", "Succeeds")
                    .uint("witness", witness as u64),
                PrecedesVerdict::IncomparableUpTo(level) => Record::new()
                    .str("verdict", "IncomparableUpTo")
                    .uint("level", level as u64),
            };
            Ok(record)
        }
        Command::Lambda {
            source,
            target,
            image,
            level,
        } => {
            let source = workspace.pointed(source, budget.max_gallop())?;
            let target = workspace.pointed(target, budget.max_gallop())?;
            let image = parse_element(target.backend(), image)?;
            let morphism = Morphism::new(source, target, image)?;
            let scalar = morphism_scalar(&morphism)?;
            Ok(enclosure_record(scalar.stream().enclosure(*level)?))
        }
        Command::Mul {
            backend,
            base,
            x,
            y,
            level,
        } => {
            let pointed = pointed_parts(&workspace, backend, base, &budget)?;
            let x = embedded(&pointed, x)?;
            let y = embedded(&pointed, y)?;
            Ok(enclosure_record(multiply(&x, &y).enclosure(*level)?))
        }
        Command::Inv {
            backend,
            base,
            x,
            level,
        } => {
            let pointed = pointed_parts(&workspace, backend, base, &budget)?;
            let x = embedded(&pointed, x)?;
            Ok(enclosure_record(invert(&x, *level, &budget)?))
        }
        Command::Sup {
            backend,
            base,
            x,
            level,
            unit,
        } => {
            let pointed = pointed_parts(&workspace, backend, base, &budget)?;
            let target = embedded(&pointed, x)?;
            let grid_backend = Backend::dyadic();
            let grid_unit = parse_element(&grid_backend, unit)?;
            let grid = PointedBackend::new(grid_backend, grid_unit)?
                .with_max_gallop(budget.max_gallop());
            let element = approximate_supremum(&grid, &target, *level, &budget)?;
            Ok(Record::new().str("element", element.to_string()))
        }
        Command::Laws {
            backend,
            base,
            count,
            level,
        } => {
            let pointed = pointed_parts(&workspace, backend, base, &budget)?;
            let sample = sample_elements(pointed.backend(), *count, cli.seed);
            let mut streams = Vec::with_capacity(sample.len());
            for element in &sample {
                streams.push(real_of(&pointed, element)?);
            }
            let report = check_field_laws(&streams, *level)?;
            Ok(Record::new()
                .uint("level", report.level as u64)
                .uint("samples", report.samples as u64)
                .uint("checks", report.checks as u64)
                .uint("violations", report.violations.len() as u64)
                .bool("passed", report.passed()))
        }
    }
}

fn one_element(workspace: &Workspace, backend: &str, text: &str) -> Result<Element, CliError> {
    let backend = workspace.backend(backend)?;
    Ok(parse_element(&backend, text)?)
}

fn element_pair(
    workspace: &Workspace,
    backend: &str,
    x: &str,
    y: &str,
) -> Result<(Element, Element), CliError> {
    let backend = workspace.backend(backend)?;
    Ok((parse_element(&backend, x)?, parse_element(&backend, y)?))
}

fn pointed_parts(
    workspace: &Workspace,
    backend: &str,
    base: &str,
    budget: &Budget,
) -> Result<PointedBackend, CliError> {
    let backend = workspace.backend(backend)?;
    let base = parse_element(&backend, base)?;
    Ok(PointedBackend::new(backend, base)?.with_max_gallop(budget.max_gallop()))
}

fn embedded(pointed: &PointedBackend, text: &str) -> Result<RealStream, CliError> {
    let element = parse_element(pointed.backend(), text)?;
    Ok(real_of(pointed, &element)?)
}

/// Terms look like `INDEX=EXPR`; the index picks the family member whose
/// grammar parses the expression.
fn parse_sum(family: &PointedFamily, terms: &[String]) -> Result<FormalSum, CliError> {
    let mut parsed = Vec::with_capacity(terms.len());
    for term in terms {
        let (index_text, expr) = term.split_once('=').ok_or_else(|| {
            CliError::Input(format!("term '{term}' must look like INDEX=EXPR"))
        })?;
        let index: usize = index_text.trim().parse().map_err(|_| {
            CliError::Input(format!("bad member index '{index_text}' in '{term}'"))
        })?;
        let member = family.member(index).ok_or_else(|| {
            CliError::Input(format!(
                "member index {index} out of range for a family of {}",
                family.len()
            ))
        })?;
        parsed.push((index, parse_element(member.backend(), expr)?));
    }
    Ok(FormalSum::new(family, parsed)?)
}

fn outcome_record(outcome: ComparisonOutcome) -> Record {
    match outcome {
        ComparisonOutcome::Less => Record::new().str("outcome", "Less"),
        ComparisonOutcome::Equal => Record::new().str("outcome", "Equal"),
        ComparisonOutcome::Greater => Record::new().str("outcome", "Greater"),
        ComparisonOutcome::Indistinguishable(level) => Record::new()
            .str("outcome", "Indistinguishable")
            .uint("level", level as u64),
    }
}

fn verdict_record(verdict: AnomalousVerdict) -> Record {
    match verdict {
        AnomalousVerdict::AnomalousUpTo(depth) => Record::new()
            .str("verdict", "AnomalousUpTo")
            .uint("depth", depth as u64),
        AnomalousVerdict::NotAnomalous(witness) => Record::new()
            .str("verdict", "NotAnomalous")
            .uint("witness", witness as u64),
    }
}

fn enclosure_record(enclosure: DyadicEnclosure) -> Record {
    Record::new()
        .str("mantissa", enclosure.lo().mantissa().to_string())
        .uint("level", enclosure.level() as u64)
        .str("ulps", enclosure.ulps().to_string())
}
