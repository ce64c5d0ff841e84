//! Labeling certificates on disk.
//!
//! JSON: `{"n", "k", "order", "labels", "span", "provenance", "valid"}`. On
//! input, `"assignment"` (a list indexed by vertex, or a map from vertex to
//! label) may replace `order` and `labels`.
//!
//! CSV: comment lines `# n=…, k=…, span=…`, then `index,vertex,label`.
//!
//! Input is canonicalized by sorting vertices by label, so the ordered and
//! unordered forms are read the same way.

use std::collections::BTreeMap;
use std::io::Write;

use radiok::cyclic::CycleInstance;
use radiok::verify::{Labeling, Provenance};
use serde::{Deserialize, Serialize};

#[derive(Debug, Serialize)]
struct LabelingOut<'a> {
    n: u64,
    k: u64,
    order: &'a [u64],
    labels: &'a [u64],
    span: u64,
    provenance: String,
    valid: bool,
}

#[derive(Debug, Deserialize)]
struct LabelingIn {
    n: Option<u64>,
    k: Option<u64>,
    order: Option<Vec<u64>>,
    labels: Option<Vec<u64>>,
    assignment: Option<AssignmentIn>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum AssignmentIn {
    List(Vec<u64>),
    Map(BTreeMap<String, u64>),
}

#[derive(Debug, Serialize, Deserialize)]
struct Row {
    index: u64,
    vertex: u64,
    label: u64,
}

/// The caller must have verified `lab`; the certificate claims validity.
pub fn write_json(lab: &Labeling, mut w: impl Write) -> std::io::Result<()> {
    let out = LabelingOut {
        n: lab.n(),
        k: lab.k(),
        order: lab.order(),
        labels: lab.labels(),
        span: lab.span(),
        provenance: lab.provenance().to_string(),
        valid: true,
    };
    serde_json::to_writer(&mut w, &out)?;
    writeln!(w)
}

pub fn write_csv(lab: &Labeling, mut w: impl Write) -> std::io::Result<()> {
    writeln!(w, "# n={}, k={}, span={}", lab.n(), lab.k(), lab.span())?;
    writeln!(w, "# provenance={}", lab.provenance())?;
    let mut csv = csv::Writer::from_writer(w);
    for (i, (&vertex, &label)) in lab.order().iter().zip(lab.labels()).enumerate() {
        csv.serialize(Row {
            index: i as u64,
            vertex,
            label,
        })?;
    }
    csv.flush()
}

/// Parses a labeling. `n` and `k` override the values recorded in the file.
pub fn read_labeling(text: &str, n: Option<u64>, k: Option<u64>) -> Result<Labeling, String> {
    let (file_n, file_k, pairs) = if text.trim_start().starts_with('{') {
        read_json(text)?
    } else {
        read_csv(text)?
    };
    let n = n.or(file_n).ok_or("n is neither given nor recorded in the file")?;
    let k = k.or(file_k).ok_or("k is neither given nor recorded in the file")?;
    CycleInstance::new(n, k).map_err(|e| e.to_string())?;
    let mut assignment = vec![None; n as usize];
    for (vertex, label) in pairs {
        let slot = assignment
            .get_mut(vertex as usize)
            .ok_or_else(|| format!("vertex {vertex} is out of range for n = {n}"))?;
        if slot.replace(label).is_some() {
            return Err(format!("vertex {vertex} is labeled twice"));
        }
    }
    let assignment = assignment
        .into_iter()
        .enumerate()
        .map(|(v, f)| f.ok_or_else(|| format!("vertex {v} has no label")))
        .collect::<Result<Vec<_>, _>>()?;
    Labeling::from_assignment(n, k, &assignment, Provenance::External).map_err(|e| e.to_string())
}

type Parsed = (Option<u64>, Option<u64>, Vec<(u64, u64)>);

fn read_json(text: &str) -> Result<Parsed, String> {
    let input: LabelingIn = serde_json::from_str(text).map_err(|e| format!("bad JSON: {e}"))?;
    let pairs = match (input.order, input.labels, input.assignment) {
        (Some(order), Some(labels), None) => {
            if order.len() != labels.len() {
                return Err(format!(
                    "{} labels for {} vertices",
                    labels.len(),
                    order.len()
                ));
            }
            order.into_iter().zip(labels).collect()
        }
        (None, None, Some(AssignmentIn::List(labels))) => {
            labels.into_iter().enumerate().map(|(v, f)| (v as u64, f)).collect()
        }
        (None, None, Some(AssignmentIn::Map(map))) => map
            .into_iter()
            .map(|(v, f)| {
                v.parse()
                    .map(|v| (v, f))
                    .map_err(|_| format!("bad vertex key {v:?}"))
            })
            .collect::<Result<_, _>>()?,
        _ => return Err("expected either \"order\" and \"labels\", or \"assignment\"".into()),
    };
    Ok((input.n, input.k, pairs))
}

fn read_csv(text: &str) -> Result<Parsed, String> {
    let (mut n, mut k) = (None, None);
    for line in text.lines().filter_map(|l| l.trim().strip_prefix('#')) {
        for field in line.split(',') {
            let Some((key, value)) = field.split_once('=') else { continue };
            let slot = match key.trim() {
                "n" => &mut n,
                "k" => &mut k,
                _ => continue,
            };
            let value = value
                .trim()
                .parse()
                .map_err(|_| format!("bad {} in comment: {value:?}", key.trim()))?;
            *slot = Some(value);
        }
    }
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let pairs = reader
        .deserialize::<Row>()
        .map(|row| row.map(|r| (r.vertex, r.label)))
        .collect::<Result<_, _>>()
        .map_err(|e| format!("bad CSV: {e}"))?;
    Ok((n, k, pairs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Labeling {
        Labeling::new(5, 3, vec![0, 2, 4, 1, 3], vec![0, 2, 4, 6, 8], Provenance::Oracle).unwrap()
    }

    #[test]
    fn json_round_trip() {
        let mut buf = Vec::new();
        write_json(&sample(), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.contains("\"provenance\":\"oracle\""));
        let back = read_labeling(&text, None, None).unwrap();
        assert_eq!(back.order(), sample().order());
        assert_eq!(back.labels(), sample().labels());
        assert_eq!(back.provenance(), Provenance::External);
    }

    #[test]
    fn csv_round_trip() {
        let mut buf = Vec::new();
        write_csv(&sample(), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("# n=5, k=3, span=8\n"));
        let back = read_labeling(&text, None, None).unwrap();
        assert_eq!(back.assignment(), sample().assignment());
    }

    #[test]
    fn assignment_forms() {
        let list = r#"{"n": 5, "k": 3, "assignment": [10, 16, 12, 18, 14]}"#;
        let map = r#"{"n": 5, "k": 3, "assignment": {"4": 14, "0": 10, "2": 12, "1": 16, "3": 18}}"#;
        for text in [list, map] {
            let lab = read_labeling(text, None, None).unwrap();
            assert_eq!(lab.order(), &[0, 2, 4, 1, 3]);
            assert_eq!(lab.labels(), &[0, 2, 4, 6, 8]);
        }
    }

    #[test]
    fn malformed_inputs() {
        let dup = r#"{"n": 3, "k": 2, "order": [0, 1, 1], "labels": [0, 2, 4]}"#;
        assert!(read_labeling(dup, None, None).unwrap_err().contains("twice"));
        let missing = r#"{"n": 3, "k": 2, "order": [0, 1], "labels": [0, 2]}"#;
        assert!(read_labeling(missing, None, None).unwrap_err().contains("no label"));
        let no_k = "index,vertex,label\n0,0,0\n";
        assert!(read_labeling(no_k, Some(1), None).is_err());
        assert!(read_labeling("{not json", None, None).is_err());
    }
}
