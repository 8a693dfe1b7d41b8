//! Byte-deterministic CSV and JSONL serialization of sweep rows, and the
//! matching parsers. These two formats are the machine contract: identical
//! inputs produce identical bytes, and parsing a report reproduces the
//! in-memory rows exactly.

use crate::counting::ResidueClass;
use crate::error::{Error, Result};
use crate::theorems::{ClaimId, ClassReport, Verdict};

/// Fixed column order: row data, then one column per claim.
pub fn csv_header() -> String {
    let mut header = String::from("p,class,a_rep,N,b,t,n,m,order3");
    for claim in ClaimId::ALL {
        header.push(',');
        header.push_str(claim.name());
    }
    header
}

/// One CSV line per row; b carries an explicit sign.
pub fn row_to_csv(row: &ClassReport) -> String {
    let mut line = format!(
        "{},{},{},{},{:+},{},{},{},{}",
        row.p,
        row.class.name(),
        row.a_rep,
        row.order,
        row.trace,
        row.t(),
        row.n,
        row.m,
        row.order3
    );
    for claim in ClaimId::ALL {
        line.push(',');
        line.push_str(row.verdict(claim).name());
    }
    line
}

/// Full CSV document, header first, LF endings, trailing newline.
pub fn reports_to_csv(rows: &[ClassReport]) -> String {
    let mut out = csv_header();
    out.push('\n');
    for row in rows {
        out.push_str(&row_to_csv(row));
        out.push('\n');
    }
    out
}

/// One JSON object per row, keys in CSV column order, verdicts nested.
pub fn row_to_jsonl(row: &ClassReport) -> String {
    let mut out = format!(
        "{{\"p\":{},\"class\":\"{}\",\"a_rep\":{},\"N\":{},\"b\":{},\"t\":{},\"n\":{},\"m\":{},\"order3\":{},\"verdicts\":{{",
        row.p,
        row.class.name(),
        row.a_rep,
        row.order,
        row.trace,
        row.t(),
        row.n,
        row.m,
        row.order3
    );
    for (i, claim) in ClaimId::ALL.into_iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&format!(
            "\"{}\":\"{}\"",
            claim.name(),
            row.verdict(claim).name()
        ));
    }
    out.push_str("}}");
    out
}

/// JSONL document, one object per line, trailing newline.
pub fn reports_to_jsonl(rows: &[ClassReport]) -> String {
    let mut out = String::new();
    for row in rows {
        out.push_str(&row_to_jsonl(row));
        out.push('\n');
    }
    out
}

fn parse_err(msg: impl Into<String>) -> Error {
    Error::ReportParse(msg.into())
}

/// Parse a CSV report produced by [`reports_to_csv`].
pub fn parse_csv(text: &str) -> Result<Vec<ClassReport>> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| parse_err("empty document"))?;
    if header != csv_header() {
        return Err(parse_err(format!("unexpected header: {header}")));
    }
    let mut rows = Vec::new();
    for (lineno, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 9 + ClaimId::COUNT {
            return Err(parse_err(format!(
                "line {}: expected {} fields, got {}",
                lineno + 2,
                9 + ClaimId::COUNT,
                fields.len()
            )));
        }
        let num = |s: &str| -> Result<u64> {
            s.parse().map_err(|_| parse_err(format!("bad number {s}")))
        };
        let p = num(fields[0])?;
        let class = ResidueClass::parse(fields[1])
            .ok_or_else(|| parse_err(format!("bad class {}", fields[1])))?;
        let a_rep = num(fields[2])?;
        let order = num(fields[3])?;
        let trace: i64 = fields[4]
            .parse()
            .map_err(|_| parse_err(format!("bad trace {}", fields[4])))?;
        let t = num(fields[5])?;
        if t != trace.unsigned_abs() {
            return Err(parse_err(format!("t = {t} does not match |b| for b = {trace}")));
        }
        let n = num(fields[6])?;
        let m = num(fields[7])?;
        let order3 = num(fields[8])? as u32;
        let mut verdicts = [Verdict::NotApplicable; ClaimId::COUNT];
        for (i, claim) in ClaimId::ALL.into_iter().enumerate() {
            verdicts[claim.index()] = Verdict::parse(fields[9 + i])
                .ok_or_else(|| parse_err(format!("bad verdict {}", fields[9 + i])))?;
        }
        rows.push(ClassReport::from_parts(
            p, class, a_rep, order, trace, n, m, order3, verdicts,
        ));
    }
    Ok(rows)
}

/// Parse a JSONL report produced by [`reports_to_jsonl`].
pub fn parse_jsonl(text: &str) -> Result<Vec<ClassReport>> {
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        if line.is_empty() {
            continue;
        }
        let value: serde_json::Value = serde_json::from_str(line)
            .map_err(|e| parse_err(format!("line {}: {e}", lineno + 1)))?;
        let get_u64 = |key: &str| -> Result<u64> {
            value
                .get(key)
                .and_then(|v| v.as_u64())
                .ok_or_else(|| parse_err(format!("missing number {key}")))
        };
        let p = get_u64("p")?;
        let class = value
            .get("class")
            .and_then(|v| v.as_str())
            .and_then(ResidueClass::parse)
            .ok_or_else(|| parse_err("missing class"))?;
        let a_rep = get_u64("a_rep")?;
        let order = get_u64("N")?;
        let trace = value
            .get("b")
            .and_then(|v| v.as_i64())
            .ok_or_else(|| parse_err("missing b"))?;
        let t = get_u64("t")?;
        if t != trace.unsigned_abs() {
            return Err(parse_err(format!("t = {t} does not match |b| for b = {trace}")));
        }
        let n = get_u64("n")?;
        let m = get_u64("m")?;
        let order3 = get_u64("order3")? as u32;
        let verdict_map = value
            .get("verdicts")
            .and_then(|v| v.as_object())
            .ok_or_else(|| parse_err("missing verdicts"))?;
        let mut verdicts = [Verdict::NotApplicable; ClaimId::COUNT];
        for claim in ClaimId::ALL {
            let v = verdict_map
                .get(claim.name())
                .and_then(|v| v.as_str())
                .and_then(Verdict::parse)
                .ok_or_else(|| parse_err(format!("missing verdict {}", claim.name())))?;
            verdicts[claim.index()] = v;
        }
        rows.push(ClassReport::from_parts(
            p, class, a_rep, order, trace, n, m, order3, verdicts,
        ));
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theorems::sweep;

    #[test]
    fn header_is_pinned() {
        assert_eq!(
            csv_header(),
            "p,class,a_rep,N,b,t,n,m,order3,\
             t2_twist_pairing,t3a,t3b,t4_six_ndiv_b,c5_n_mod6,c6_b_mod12,t7a,t7b,\
             c8_order3_by_t,t9_count_in_2_8,c10_unique_preimage,t11_three_roots,\
             t12_chisum_mod6,t13_qr_iff_n0,c14_b_mod6,t15_nqr_iff_n4,\
             c16_order3_by_residue,t18_washington_refined,s1_sign_hypothesis,cyclic_5mod6"
        );
    }

    #[test]
    fn trace_carries_an_explicit_sign() {
        let rows = sweep(13, None).unwrap();
        let csv = reports_to_csv(&rows);
        let p7 = csv.lines().find(|l| l.starts_with("7,QR")).unwrap();
        assert!(p7.contains(",-4,4,"), "negative trace: {p7}");
        let p13 = csv.lines().find(|l| l.starts_with("13,QR")).unwrap();
        assert!(p13.contains(",+2,2,"), "positive trace: {p13}");
    }

    #[test]
    fn csv_round_trips() {
        let rows = sweep(50, None).unwrap();
        let text = reports_to_csv(&rows);
        assert_eq!(parse_csv(&text).unwrap(), rows);
    }

    #[test]
    fn jsonl_round_trips() {
        let rows = sweep(50, None).unwrap();
        let text = reports_to_jsonl(&rows);
        assert_eq!(parse_jsonl(&text).unwrap(), rows);
        // every line is of course valid JSON
        for line in text.lines() {
            let v: serde_json::Value = serde_json::from_str(line).unwrap();
            assert!(v.get("verdicts").is_some());
        }
    }

    #[test]
    fn serialization_is_deterministic() {
        let a = sweep(100, None).unwrap();
        let b = sweep(100, None).unwrap();
        assert_eq!(reports_to_csv(&a), reports_to_csv(&b));
        assert_eq!(reports_to_jsonl(&a), reports_to_jsonl(&b));
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_csv("not,a,header\n1,2,3").is_err());
        assert!(parse_csv("").is_err());
        let rows = sweep(13, None).unwrap();
        let good = reports_to_csv(&rows);
        let tampered = good.replace(",-4,4,", ",-4,5,");
        assert!(parse_csv(&tampered).is_err(), "t inconsistent with b");
        assert!(parse_jsonl("{\"p\":7}\n").is_err());
        assert!(parse_jsonl("nonsense\n").is_err());
    }
}
