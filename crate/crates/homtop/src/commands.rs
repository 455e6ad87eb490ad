//! Subcommand implementations. Each returns a `CommandResult` holding the JSON
//! payload, the rendered table and a CSV form.

use std::fmt::Write as _;

use homtop_core::groups::{stable_homotopy_finite_pi1, stable_homotopy_simply_connected};
use homtop_core::oracle::{koszul_leading_monomial_check, OracleReport};
use homtop_core::ranks::{divisibility_report, pbw_identity_check, PbwIdentity};
use homtop_core::series::{free_comm_series, pbw_series, quotient_series, tensor_series};
use homtop_core::{
    growth_report, homotopy_ranks, Classification, Error, GradedDims, PbwCheck, StemsTable,
    TruncatedSeries,
};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::json::{field_name, GroupDoc, GrowthDoc, OracleDoc, RankTableDoc, SeriesDoc};
use crate::parallel::quotient_dims_oracle_par;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    Fail,
    NotApplicable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Clone, Debug)]
pub struct CommandResult {
    pub status: Status,
    /// Always carries `status` and `failing_checks` next to the command's own fields.
    pub payload: Value,
    pub rendered: String,
    pub csv: String,
}

impl CommandResult {
    fn new(failing: Vec<String>, mut payload: Value, rendered: String, csv: String) -> Self {
        let status = if failing.is_empty() {
            Status::Ok
        } else {
            Status::Fail
        };
        let obj = payload.as_object_mut().expect("payload is an object");
        obj.insert("status".into(), serde_json::to_value(status).unwrap());
        obj.insert("failing_checks".into(), json!(failing));
        CommandResult {
            status,
            payload,
            rendered,
            csv,
        }
    }

    pub fn failing_checks(&self) -> Vec<String> {
        self.payload["failing_checks"]
            .as_array()
            .map(|a| {
                a.iter()
                    .filter_map(|v| v.as_str().map(String::from))
                    .collect()
            })
            .unwrap_or_default()
    }

    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Ok | Status::NotApplicable => 0,
            Status::Fail => 1,
        }
    }

    pub fn output(&self, format: Format) -> String {
        match format {
            Format::Table => self.rendered.clone(),
            Format::Json => {
                let mut s =
                    serde_json::to_string_pretty(&self.payload).expect("serializable payload");
                s.push('\n');
                s
            }
            Format::Csv => self.csv.clone(),
        }
    }
}

#[derive(Debug, Error)]
pub enum CommandError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Failed(String),
}

impl CommandError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CommandError::Usage(_) => 2,
            CommandError::Failed(_) => 1,
        }
    }
}

impl From<Error> for CommandError {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(_) => CommandError::Usage(e.to_string()),
            _ => CommandError::Failed(e.to_string()),
        }
    }
}

/// CSV table built row by row.
struct Csv(csv::Writer<Vec<u8>>);

impl Csv {
    fn new(header: &[&str]) -> Self {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(header).expect("write to memory");
        Csv(w)
    }

    fn row<I: IntoIterator<Item = String>>(&mut self, fields: I) {
        self.0
            .write_record(fields.into_iter().collect::<Vec<_>>())
            .expect("write to memory");
    }

    fn finish(self) -> String {
        String::from_utf8(self.0.into_inner().expect("flush to memory")).expect("utf-8 fields")
    }
}

pub type CommandOutcome = Result<CommandResult, CommandError>;

fn require_betti(betti: u64) -> Result<(), CommandError> {
    if betti < 1 {
        return Err(CommandError::Usage("--betti must be at least 1".into()));
    }
    Ok(())
}

pub fn cmd_ranks(betti: u64, max_degree: usize) -> CommandOutcome {
    require_betti(betti)?;
    if max_degree < 1 {
        return Err(CommandError::Usage(
            "--max-degree must be at least 1".into(),
        ));
    }
    let table = homotopy_ranks(betti, max_degree)?;
    let classification = Classification::of(betti);

    let mut payload = serde_json::to_value(RankTableDoc::from(&table)).unwrap();
    payload["classification"] = json!(classification.as_str());

    let mut rendered = format!("rational homotopy ranks, b2 = {betti}\n");
    let width = table
        .ranks()
        .iter()
        .map(|r| r.to_string().len())
        .max()
        .unwrap_or(1)
        .max(4);
    let _ = writeln!(rendered, "{:<8}{:>width$}", "group", "rank");
    let mut csv = Csv::new(&["degree", "rank"]);
    for (i, r) in table.ranks().iter().enumerate() {
        let _ = writeln!(
            rendered,
            "{:<8}{:>width$}",
            format!("pi_{}", i + 2),
            r.to_string()
        );
        csv.row([(i + 2).to_string(), r.to_string()]);
    }
    let _ = writeln!(rendered, "classification: {}", classification.as_str());
    Ok(CommandResult::new(
        Vec::new(),
        payload,
        rendered,
        csv.finish(),
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesKind {
    Tensor,
    Quotient,
    Pbw,
    FreeComm,
}

impl SeriesKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SeriesKind::Tensor => "tensor",
            SeriesKind::Quotient => "quotient",
            SeriesKind::Pbw => "pbw",
            SeriesKind::FreeComm => "free-comm",
        }
    }

    fn describe(self, betti: u64) -> String {
        match self {
            SeriesKind::Tensor => {
                format!("T(V), V = {betti} generators in degree 1 and {betti} in degree 2")
            }
            SeriesKind::Quotient => format!("1 / (1 - {betti}t - {betti}t^2 + t^3)"),
            SeriesKind::Pbw => {
                format!("universal enveloping algebra on the rational homotopy ranks, b2 = {betti}")
            }
            SeriesKind::FreeComm => {
                format!("free graded commutative algebra, {betti} generators in degree 1 and {betti} in degree 2")
            }
        }
    }
}

/// `terms` coefficients of the named series.
pub fn cmd_series(kind: SeriesKind, betti: u64, terms: usize) -> CommandOutcome {
    require_betti(betti)?;
    if terms < 1 {
        return Err(CommandError::Usage("--terms must be at least 1".into()));
    }
    let order = terms - 1;
    let s: TruncatedSeries = match kind {
        SeriesKind::Tensor => tensor_series(&GradedDims::xy_generators(betti, order), order)?,
        SeriesKind::Quotient => quotient_series(betti, order)?,
        SeriesKind::Pbw => pbw_series(&homotopy_ranks(betti, order.max(1))?, order)?,
        SeriesKind::FreeComm => free_comm_series(&GradedDims::xy_generators(betti, order), order)?,
    };
    let doc = SeriesDoc::from(&s);
    let mut payload = json!({ "kind": kind.as_str(), "betti": betti });
    let obj = payload.as_object_mut().unwrap();
    for (k, v) in serde_json::to_value(&doc).unwrap().as_object().unwrap() {
        obj.insert(k.clone(), v.clone());
    }

    let mut rendered = format!("{}\n", kind.describe(betti));
    let mut csv = Csv::new(&["degree", "coefficient"]);
    for (i, c) in doc.coefficients.iter().enumerate() {
        let _ = writeln!(rendered, "t^{i:<4} {c}");
        csv.row([i.to_string(), c.clone()]);
    }
    Ok(CommandResult::new(
        Vec::new(),
        payload,
        rendered,
        csv.finish(),
    ))
}

/// `pi_n^s(M)`; with `pi1_order > 1` the finite-fundamental-group formula is used.
pub fn cmd_stable(betti: u64, n: i64, pi1_order: u64, stems: &StemsTable) -> CommandOutcome {
    require_betti(betti)?;
    if pi1_order < 1 {
        return Err(CommandError::Usage("--pi1-order must be at least 1".into()));
    }
    let computed = if pi1_order == 1 {
        stable_homotopy_simply_connected(betti, n, stems)
    } else {
        stable_homotopy_finite_pi1(betti, n, pi1_order, stems)
    };
    let label = if pi1_order == 1 {
        format!("pi_{n}^s(M), b2 = {betti}")
    } else {
        format!("pi_{n}^s(M), pi_2 = Z^{betti}, |pi_1| = {pi1_order}")
    };
    let mut payload = json!({ "betti": betti, "n": n, "pi1_order": pi1_order });
    match computed {
        Ok(g) => {
            let display = g.to_string();
            let primary = g.primary_notation();
            payload["group"] = serde_json::to_value(GroupDoc::from(&g)).unwrap();
            payload["display"] = json!(display);
            payload["primary"] = json!(primary);
            payload["stems_source"] = json!(stems.source_note());
            let rendered = format!(
                "{label}\ngroup:   {display}\nprimary: {primary}\nstems:   {}\n",
                stems.source_note()
            );
            let mut csv = Csv::new(&["n", "group", "primary"]);
            csv.row([n.to_string(), display, primary]);
            Ok(CommandResult::new(
                Vec::new(),
                payload,
                rendered,
                csv.finish(),
            ))
        }
        Err(Error::InsufficientStemsData { missing }) => {
            let msg = format!(
                "stems table covers stems 0..={} but stem {missing} is needed",
                stems.max_index()
            );
            payload["missing_stem"] = json!(missing);
            let rendered = format!("{label}\nFAIL: {msg}\n");
            let mut csv = Csv::new(&["n", "group", "primary"]);
            csv.row([n.to_string(), String::new(), String::new()]);
            Ok(CommandResult::new(
                vec![msg],
                payload,
                rendered,
                csv.finish(),
            ))
        }
        Err(e) => Err(e.into()),
    }
}

pub fn cmd_growth(betti: u64, probe: usize) -> CommandOutcome {
    require_betti(betti)?;
    if probe < 1 {
        return Err(CommandError::Usage("--probe must be at least 1".into()));
    }
    let report = growth_report(betti, probe)?;
    let doc = GrowthDoc::from(&report);
    let payload = serde_json::to_value(&doc).unwrap();

    let mut rendered = format!("growth of rational homotopy, b2 = {betti}, probe degree {probe}\n");
    let _ = writeln!(rendered, "classification:     {}", doc.classification);
    let na = || "n/a".to_string();
    let _ = writeln!(
        rendered,
        "growth base:        {}",
        doc.growth_base.clone().unwrap_or_else(na)
    );
    let _ = writeln!(
        rendered,
        "limit residual:     {}",
        doc.limit_residual.clone().unwrap_or_else(na)
    );
    let _ = writeln!(
        rendered,
        "fitted base:        {}",
        doc.fitted_base.clone().unwrap_or_else(na)
    );
    let _ = writeln!(
        rendered,
        "fitted scale:       {}",
        doc.fitted_scale.clone().unwrap_or_else(na)
    );
    let _ = writeln!(rendered, "exponential growth: {}", doc.exponential_growth);
    let _ = writeln!(rendered, "precision digits:   {}", doc.precision_digits);

    let mut failing = Vec::new();
    let mut csv = Csv::new(&["n", "cumulative_bound_ok"]);
    if !doc.cumulative_bound_ok.is_empty() {
        let _ = writeln!(
            rendered,
            "cumulative bound, sum of ranks up to pi_(2n+1) against (b2-1)^(2n)/(2n)"
        );
        let _ = writeln!(rendered, "{:>4}  ok", "n");
    }
    for (i, ok) in doc.cumulative_bound_ok.iter().enumerate() {
        let _ = writeln!(rendered, "{:>4}  {ok}", i + 1);
        csv.row([(i + 1).to_string(), ok.to_string()]);
        if !ok {
            failing.push(format!("cumulative bound at n = {}", i + 1));
        }
    }
    Ok(CommandResult::new(failing, payload, rendered, csv.finish()))
}

fn pbw_entry(b2: u64, order: usize) -> Result<(Value, Option<String>), CommandError> {
    let check = pbw_identity_check(b2, order)?;
    let (text, failure) = match check {
        PbwCheck::Holds => ("holds".to_string(), None),
        PbwCheck::NotApplicable => ("not applicable".to_string(), None),
        PbwCheck::Fails { degree, identity } => {
            let which = match identity {
                PbwIdentity::Product => "product",
                PbwIdentity::LoopAlgebra => "loop algebra",
            };
            let msg = format!("pbw identity ({which}) at b2 = {b2} fails in degree {degree}");
            (format!("fails in degree {degree} ({which})"), Some(msg))
        }
    };
    Ok((json!({ "b2": b2, "order": order, "result": text }), failure))
}

/// Oracle for `T(V)/I` with parameter `betti`, the Euler and Koszul checks, and
/// the PBW identities at `b2 = betti` and `b2 = betti + 1`.
pub fn cmd_verify(betti: u64, max_degree: usize, budget: u64) -> CommandOutcome {
    require_betti(betti)?;
    let mut failing = Vec::new();
    let mut rendered = format!("verification, k = {betti}, degrees 0..={max_degree}\n");
    let mut csv = Csv::new(&[
        "degree",
        "tensor",
        "ideal",
        "quotient",
        "series_match",
        "euler_ok",
    ]);
    let mut payload = json!({ "betti": betti, "max_degree": max_degree, "budget": budget });

    match quotient_dims_oracle_par(betti, max_degree, budget) {
        Ok(report) => {
            render_oracle(&report, &mut rendered, &mut csv);
            for (n, ok) in report.series_match.iter().enumerate() {
                if !ok {
                    failing.push(format!("quotient series mismatch in degree {n}"));
                }
            }
            for (n, ok) in report.euler_ok.iter().enumerate() {
                if !ok {
                    failing.push(format!("euler identity fails in degree {n}"));
                }
            }
            payload["oracle"] = serde_json::to_value(OracleDoc::from(&report)).unwrap();
        }
        Err(e @ Error::ResourceLimit { .. }) => {
            let msg = format!("oracle: {e}; raise --budget or lower --max-degree");
            let _ = writeln!(rendered, "{msg}");
            failing.push(msg);
            payload["oracle"] = Value::Null;
        }
        Err(e) => return Err(e.into()),
    }

    let koszul = koszul_leading_monomial_check(betti);
    let _ = writeln!(
        rendered,
        "koszul leading monomial: {} ({})",
        koszul.leading,
        if koszul.holds {
            "unique, as expected"
        } else {
            "unexpected"
        }
    );
    if !koszul.holds {
        failing.push(format!("koszul leading monomial is {}", koszul.leading));
    }
    payload["koszul"] = json!({ "holds": koszul.holds, "leading": koszul.leading.to_string() });

    let order = max_degree.max(1);
    let mut pbw = Vec::new();
    for b2 in [betti, betti + 1] {
        let (entry, failure) = pbw_entry(b2, order)?;
        let _ = writeln!(
            rendered,
            "pbw identities, b2 = {b2}, order {order}: {}",
            entry["result"].as_str().unwrap()
        );
        pbw.push(entry);
        failing.extend(failure);
    }
    payload["pbw"] = json!(pbw);

    // The divisibility statements are reported, never enforced.
    let mut divisibility = Vec::new();
    if betti + 1 >= 3 {
        let claims = divisibility_report(betti + 1, order.max(6))?;
        let _ = writeln!(
            rendered,
            "divisibility statements at b2 = {} (informational):",
            betti + 1
        );
        for c in &claims {
            let verdict = if c.holds() {
                "holds on the computed range".to_string()
            } else {
                format!("fails for pi_n with n in {:?}", c.failures)
            };
            let _ = writeln!(rendered, "  {}: {verdict}", c.statement);
            divisibility.push(json!({
                "statement": c.statement,
                "divisor": c.divisor,
                "failures": c.failures,
            }));
        }
    }
    payload["divisibility"] = json!(divisibility);

    for f in &failing {
        let _ = writeln!(rendered, "failed: {f}");
    }
    rendered.push_str(if failing.is_empty() {
        "PASS\n"
    } else {
        "FAIL\n"
    });
    Ok(CommandResult::new(failing, payload, rendered, csv.finish()))
}

fn render_oracle(report: &OracleReport, rendered: &mut String, csv: &mut Csv) {
    let _ = writeln!(rendered, "field: {}", field_name(report.field_used));
    let _ = writeln!(
        rendered,
        "{:>6} {:>12} {:>12} {:>12} {:>8} {:>8}",
        "degree", "tensor", "ideal", "quotient", "series", "euler"
    );
    for n in 0..=report.max_degree {
        let (t, i, q) = (
            report.tensor_dims.get(n),
            report.ideal_dims.get(n),
            report.quotient_dims.get(n),
        );
        let (s, e) = (report.series_match[n], report.euler_ok[n]);
        let _ = writeln!(
            rendered,
            "{n:>6} {:>12} {:>12} {:>12} {:>8} {:>8}",
            t.to_string(),
            i.to_string(),
            q.to_string(),
            s,
            e
        );
        csv.row([
            n.to_string(),
            t.to_string(),
            i.to_string(),
            q.to_string(),
            s.to_string(),
            e.to_string(),
        ]);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stems::bundled;

    #[test]
    fn ranks_footer_and_csv() {
        let r = cmd_ranks(3, 6).unwrap();
        assert!(r.rendered.contains("pi_7      55"));
        assert!(r.rendered.ends_with("classification: hyperbolic\n"));
        assert!(r.csv.ends_with("7,55\n"));
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn stable_missing_stem_names_index() {
        let r = cmd_stable(2, 30, 1, &bundled()).unwrap();
        assert_eq!(r.status, Status::Fail);
        assert!(r.failing_checks()[0].contains("stem 28"));
        assert_eq!(r.exit_code(), 1);
    }

    #[test]
    fn verify_small() {
        let r = cmd_verify(2, 6, 50_000).unwrap();
        assert_eq!(r.status, Status::Ok, "{}", r.rendered);
        assert!(r.rendered.ends_with("PASS\n"));
    }

    #[test]
    fn verify_budget() {
        let r = cmd_verify(3, 50, 50_000).unwrap();
        assert_eq!(r.status, Status::Fail);
        assert!(r.rendered.ends_with("FAIL\n"));
        assert!(r.failing_checks()[0].contains("resource limit"));
    }

    #[test]
    fn usage_errors() {
        assert_eq!(cmd_ranks(0, 5).unwrap_err().exit_code(), 2);
        assert_eq!(cmd_growth(0, 5).unwrap_err().exit_code(), 2);
        assert_eq!(cmd_stable(1, 4, 0, &bundled()).unwrap_err().exit_code(), 2);
    }
}
