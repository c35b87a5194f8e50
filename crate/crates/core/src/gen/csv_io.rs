use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use crate::data::Dataset;
use crate::error::{Error, Result};

/// Reads a numeric CSV file. A first row with a non-numeric feature cell is
/// taken as a header. `label_col` is a 0-based column index; integer labels
/// are used as class ids, any other text is mapped to ids in sorted order.
pub fn load_csv(path: &Path, label_col: Option<usize>) -> Result<Dataset> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let name = path
        .file_stem()
        .map_or_else(|| "dataset".to_string(), |s| s.to_string_lossy().into_owned());
    read_csv(file, name, label_col)
}

pub(crate) fn read_csv(input: impl Read, name: String, label_col: Option<usize>) -> Result<Dataset> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(input);

    let mut width = None;
    let mut values = Vec::new();
    let mut labels: Vec<String> = Vec::new();
    let mut n = 0;
    for (idx, rec) in reader.records().enumerate() {
        let row = idx + 1;
        let rec = rec.map_err(|e| Error::Parse {
            row,
            column: 0,
            message: e.to_string(),
        })?;
        if rec.len() == 1 && rec[0].is_empty() {
            continue;
        }
        let is_feature = |c: usize| Some(c) != label_col;
        if idx == 0 && rec.iter().enumerate().any(|(c, v)| is_feature(c) && v.parse::<f64>().is_err()) {
            width = Some(rec.len());
            continue;
        }
        let w = *width.get_or_insert(rec.len());
        if rec.len() != w {
            return Err(Error::Parse {
                row,
                column: rec.len().min(w) + 1,
                message: format!("expected {w} fields, found {}", rec.len()),
            });
        }
        if let Some(lc) = label_col {
            if lc >= w {
                return Err(Error::invalid(format!(
                    "label column {lc} out of range for {w} columns"
                )));
            }
        }
        for (c, cell) in rec.iter().enumerate() {
            if !is_feature(c) {
                labels.push(cell.to_string());
                continue;
            }
            let v: f64 = cell.parse().map_err(|_| Error::Parse {
                row,
                column: c + 1,
                message: format!("'{cell}' is not a number"),
            })?;
            if !v.is_finite() {
                return Err(Error::Parse {
                    row,
                    column: c + 1,
                    message: format!("'{cell}' is not finite"),
                });
            }
            values.push(v);
        }
        n += 1;
    }
    if n == 0 {
        return Err(Error::InvalidData(format!("'{name}' has no data rows")));
    }
    let p = width.unwrap_or(0) - usize::from(label_col.is_some());
    let ds = Dataset::from_flat(name, n, p, values)?;
    if label_col.is_none() {
        return Ok(ds);
    }
    let ids: Option<Vec<usize>> = labels.iter().map(|l| l.parse().ok()).collect();
    let ids = ids.unwrap_or_else(|| {
        let mut names = labels.clone();
        names.sort();
        names.dedup();
        labels
            .iter()
            .map(|l| names.binary_search(l).expect("label present"))
            .collect()
    });
    ds.with_labels(ids)
}

/// Writes a dataset as CSV with a header `x1,...,xp` and, when the dataset
/// has labels, a trailing `label` column.
pub fn write_csv(ds: &Dataset, path: &Path) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    write_to(ds, file).map_err(|e| Error::io(path, e))
}

pub(crate) fn write_to(ds: &Dataset, out: impl Write) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header: Vec<String> = (1..=ds.p()).map(|j| format!("x{j}")).collect();
    if ds.labels().is_some() {
        header.push("label".into());
    }
    w.write_record(&header)?;
    let mut cells = Vec::with_capacity(ds.p() + 1);
    for (i, row) in ds.rows().enumerate() {
        cells.clear();
        cells.extend(row.iter().map(f64::to_string));
        if let Some(l) = ds.labels() {
            cells.push(l[i].to_string());
        }
        w.write_record(&cells)?;
    }
    w.flush()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn read(s: &str, label: Option<usize>) -> Result<Dataset> {
        read_csv(s.as_bytes(), "t".into(), label)
    }

    #[test]
    fn header_is_detected() {
        let ds = read("a,b\n1,2\n3,4\n", None).unwrap();
        assert_eq!((ds.n(), ds.p()), (2, 2));
        let ds = read("1,2\n3,4\n", None).unwrap();
        assert_eq!(ds.n(), 2);
    }

    #[test]
    fn single_row() {
        let ds = read("1.5,2,3\n", None).unwrap();
        assert_eq!((ds.n(), ds.p()), (1, 3));
    }

    #[test]
    fn label_column_is_split_off() {
        let ds = read("1,2,7\n3,4,9\n5,6,7\n", Some(2)).unwrap();
        assert_eq!(ds.p(), 2);
        assert_eq!(ds.labels(), Some(&[0, 1, 0][..]));
        assert_eq!(ds.row(1), &[3.0, 4.0]);

        let ds = read("x,y,class\n1,2,setosa\n3,4,virginica\n5,6,setosa\n", Some(2)).unwrap();
        assert_eq!(ds.labels(), Some(&[0, 1, 0][..]));
        let ds = read("c,x\nb,1\na,2\n", Some(0)).unwrap();
        assert_eq!(ds.labels(), Some(&[1, 0][..]));
    }

    #[test]
    fn errors_carry_positions() {
        match read("1,2\n3\n", None) {
            Err(Error::Parse { row: 2, column: 2, .. }) => {}
            other => panic!("{other:?}"),
        }
        match read("1,2\n3,abc\n", None) {
            Err(Error::Parse { row: 2, column: 2, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(read("", None).is_err());
        assert!(read("1,2\n", Some(5)).is_err());
    }

    #[test]
    fn iris_shaped_file() {
        let mut s = String::from("sepal_length,sepal_width,petal_length,petal_width,species\n");
        for c in ["setosa", "versicolor", "virginica"] {
            for i in 0..50 {
                s.push_str(&format!("{},{},{},{},{c}\n", 5.0 + i as f64 * 0.01, 3.1, 1.4, 0.2));
            }
        }
        let ds = read(&s, Some(4)).unwrap();
        assert_eq!((ds.n(), ds.p()), (150, 4));
        assert_eq!(ds.n_classes(), Some(3));
    }

    #[test]
    fn round_trip_is_exact() {
        let ds = Dataset::from_rows("r", &[vec![0.1, -1e-300], vec![1.0 / 3.0, 12345.678]])
            .unwrap()
            .with_labels(vec![1, 0])
            .unwrap();
        let mut buf = Vec::new();
        write_to(&ds, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("x1,x2,label\n"));
        let back = read(&text, Some(2)).unwrap();
        assert_eq!(back.as_flat(), ds.as_flat());
        assert_eq!(back.labels(), ds.labels());
    }
}
