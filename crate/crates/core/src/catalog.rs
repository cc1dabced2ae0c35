//! Named enumerators: the compiled-in reference set and a JSON file store
//! for discoveries.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::moments::Parity;
use crate::poly::{fwe_classify, Duality, HomogPoly};
use crate::{Error, ExactNumber, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Builtin,
    Discovered,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QValue {
    pub value: ExactNumber,
    /// Monic minimal polynomial over the rationals, constant term first.
    pub minimal_polynomial: Vec<String>,
}

impl QValue {
    pub fn new(value: ExactNumber) -> Self {
        let minimal_polynomial = value.minimal_polynomial().iter().map(|c| c.to_string()).collect();
        QValue { value, minimal_polynomial }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    pub n: usize,
    pub parity: Parity,
    pub q: QValue,
    pub class: Duality,
    pub coeffs: Vec<ExactNumber>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zeta_coeffs: Option<Vec<ExactNumber>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub two_g: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rh_status: Option<String>,
    pub source: Source,
}

impl CatalogEntry {
    pub fn new(name: &str, w: &HomogPoly, q: ExactNumber, class: Duality, source: Source) -> Self {
        let n = w.degree();
        CatalogEntry {
            name: name.to_string(),
            n,
            parity: if n % 2 == 0 { Parity::Even } else { Parity::Odd },
            q: QValue::new(q),
            class,
            coeffs: w.coeffs().to_vec(),
            zeta_coeffs: None,
            two_g: None,
            rh_status: None,
            source,
        }
    }

    pub fn poly(&self) -> HomogPoly {
        HomogPoly::new(self.coeffs.clone())
    }

    pub fn q(&self) -> &ExactNumber {
        &self.q.value
    }

    /// `sqrt(q)` when it lies in the field of `q`.
    pub fn sqrt_q(&self) -> Option<ExactNumber> {
        self.q.value.sqrt_in_field().ok().flatten()
    }

    /// Structural checks plus the recorded class against the transform.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Error::Catalog { entry: self.name.clone(), msg };
        if self.coeffs.len() != self.n + 1 {
            return Err(bad(format!("expected {} coefficients, found {}", self.n + 1, self.coeffs.len())));
        }
        if (self.n % 2 == 0) != (self.parity == Parity::Even) {
            return Err(bad(format!("parity {} does not match n = {}", self.parity, self.n)));
        }
        let mp: Vec<String> = self.q.value.minimal_polynomial().iter().map(|c| c.to_string()).collect();
        if mp != self.q.minimal_polynomial {
            return Err(bad(format!("minimal polynomial of q should be {mp:?}")));
        }
        let sqrt_q = self.sqrt_q();
        let class = fwe_classify(&self.poly(), self.q(), sqrt_q.as_ref()).map_err(|e| bad(e.to_string()))?;
        if class != self.class {
            return Err(bad(format!("recorded class {} but the transform gives {class}", self.class)));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Catalog {
    pub entries: Vec<CatalogEntry>,
}

fn e(s: &str) -> ExactNumber {
    s.parse().expect("built-in literal")
}

/// `sum A_i x^(n-2i) y^(2i)` from the even-index coefficients.
fn even(c: &[&str]) -> HomogPoly {
    let n = 2 * (c.len() - 1);
    let entries: Vec<(usize, ExactNumber)> = c.iter().enumerate().map(|(i, s)| (2 * i, e(s))).collect();
    HomogPoly::from_sparse(n, &entries)
}

fn odd(c: &[&str]) -> HomogPoly {
    let n = 2 * c.len() - 1;
    let entries: Vec<(usize, ExactNumber)> = c.iter().enumerate().map(|(i, s)| (2 * i, e(s))).collect();
    HomogPoly::from_sparse(n, &entries)
}

/// Names of the built-in `W_(2,q) = x^2 + (q-1) y^2`.
pub const W2_FAMILY: [(&str, &str); 9] = [
    ("W2_2", "2"),
    ("W2_4", "4"),
    ("W2_4/3", "4/3"),
    ("W2_4+2sqrt2", "4+2*sqrt(2)"),
    ("W2_4-2sqrt2", "4-2*sqrt(2)"),
    ("W2_2+2sqrt5/5", "2+2/5*sqrt(5)"),
    ("W2_2-2sqrt5/5", "2-2/5*sqrt(5)"),
    ("W2_8+4sqrt3", "8+4*sqrt(3)"),
    ("W2_8-4sqrt3", "8-4*sqrt(3)"),
];

fn builtin_entries() -> Vec<CatalogEntry> {
    use Duality::{AntiInvariant as Anti, Invariant as Inv};
    let mk = |name: &str, w: HomogPoly, q: &str, class| CatalogEntry::new(name, &w, e(q), class, Source::Builtin);
    let mut out: Vec<CatalogEntry> = W2_FAMILY
        .iter()
        .map(|(name, q)| mk(name, HomogPoly::w2(&e(q)), q, Inv))
        .collect();
    out.push(mk("phi3", odd(&["1", "-9"]), "4", Anti));
    out.push(mk("phi4", even(&["1", "-6", "1"]), "2", Anti));
    out.push(mk("phi5", odd(&["1", "-50+20*sqrt(5)", "225-100*sqrt(5)"]), "6-2*sqrt(5)", Anti));
    out.push(mk("phi6", even(&["1", "-5", "5/3", "-1/27"]), "4/3", Anti));
    out.push(mk(
        "phi8plus",
        even(&["1", "-84-56*sqrt(2)", "1190+840*sqrt(2)", "-2772-1960*sqrt(2)", "577+408*sqrt(2)"]),
        "4+2*sqrt(2)",
        Anti,
    ));
    out.push(mk(
        "phi8minus",
        even(&["1", "-84+56*sqrt(2)", "1190-840*sqrt(2)", "-2772+1960*sqrt(2)", "577-408*sqrt(2)"]),
        "4-2*sqrt(2)",
        Anti,
    ));
    out.push(mk(
        "phi10plus",
        even(&[
            "1",
            "-45-18*sqrt(5)",
            "378+168*sqrt(5)",
            "-714-1596/5*sqrt(5)",
            "1449/5+648/5*sqrt(5)",
            "-61/5-682/125*sqrt(5)",
        ]),
        "2+2/5*sqrt(5)",
        Anti,
    ));
    out.push(mk(
        "phi10minus",
        even(&[
            "1",
            "-45+18*sqrt(5)",
            "378-168*sqrt(5)",
            "-714+1596/5*sqrt(5)",
            "1449/5-648/5*sqrt(5)",
            "-61/5+682/125*sqrt(5)",
        ]),
        "2-2/5*sqrt(5)",
        Anti,
    ));
    out.push(mk(
        "phi12plus",
        even(&[
            "1",
            "-462-264*sqrt(3)",
            "48015+27720*sqrt(3)",
            "-1248324-720720*sqrt(3)",
            "9314415+5377680*sqrt(3)",
            "-17297742-9986856*sqrt(3)",
            "3650401+2107560*sqrt(3)",
        ]),
        "8+4*sqrt(3)",
        Anti,
    ));
    out.push(mk(
        "phi12minus",
        even(&[
            "1",
            "-462+264*sqrt(3)",
            "48015-27720*sqrt(3)",
            "-1248324+720720*sqrt(3)",
            "9314415-5377680*sqrt(3)",
            "-17297742+9986856*sqrt(3)",
            "3650401-2107560*sqrt(3)",
        ]),
        "8-4*sqrt(3)",
        Anti,
    ));
    out.push(mk("WH8", HomogPoly::from_ints(&[1, 0, 0, 0, 14, 0, 0, 0, 1]), "2", Inv));
    let mut g24 = vec![0i64; 25];
    (g24[0], g24[8], g24[12], g24[16], g24[24]) = (1, 759, 2576, 759, 1);
    out.push(mk("WG24", HomogPoly::from_ints(&g24), "2", Inv));
    out.push(mk("W12", HomogPoly::from_ints(&[1, 0, 0, 0, -33, 0, 0, 0, -33, 0, 0, 0, 1]), "2", Anti));
    out.push(mk(
        "W24_4+2sqrt2",
        even(&[
            "1",
            "0",
            "-16422-11592*sqrt(2)",
            "1020096+721280*sqrt(2)",
            "-33004977-23338008*sqrt(2)",
            "519785280+367543680*sqrt(2)",
            "-4102489300-2900898000*sqrt(2)",
            "17657398080+12485665920*sqrt(2)",
            "-38087686257-26932061232*sqrt(2)",
            "39988783296+28276339840*sqrt(2)",
            "-21850472742-15450617448*sqrt(2)",
            "0",
            "768398401+543339720*sqrt(2)",
        ]),
        "4+2*sqrt(2)",
        Anti,
    ));
    out
}

impl Catalog {
    /// The compiled-in reference enumerators.
    pub fn builtin() -> Self {
        Catalog { entries: builtin_entries() }
    }

    pub fn get(&self, name: &str) -> Option<&CatalogEntry> {
        self.entries.iter().find(|x| x.name == name)
    }

    pub fn lookup(&self, name: &str) -> Result<&CatalogEntry> {
        self.get(name).ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    /// Canonical JSON text (two-space indent, trailing newline).
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("catalog serializes");
        s.push('\n');
        s
    }

    /// Parse and validate; errors name the first offending entry.
    pub fn from_json(text: &str) -> Result<Self> {
        let root: Value = serde_json::from_str(text)?;
        let list = root
            .get("entries")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Catalog { entry: "<root>".into(), msg: "missing `entries` array".into() })?;
        let mut entries = Vec::with_capacity(list.len());
        for (i, v) in list.iter().enumerate() {
            let label = v
                .get("name")
                .and_then(Value::as_str)
                .map(str::to_string)
                .unwrap_or_else(|| format!("#{i}"));
            let entry: CatalogEntry =
                serde_json::from_value(v.clone()).map_err(|err| Error::Catalog { entry: label.clone(), msg: err.to_string() })?;
            entry.validate()?;
            if entries.iter().any(|x: &CatalogEntry| x.name == entry.name) {
                return Err(Error::Catalog { entry: label, msg: "duplicate name".into() });
            }
            entries.push(entry);
        }
        Ok(Catalog { entries })
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&fs::read_to_string(path)?)
    }

    /// Write to a sibling temporary file, then rename over `path`.
    pub fn save(&self, path: &Path) -> Result<()> {
        let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
        let file = path.file_name().ok_or_else(|| Error::domain("catalog path has no file name"))?;
        let tmp = dir.join(format!(".{}.{}.tmp", file.to_string_lossy(), std::process::id()));
        let write = || -> Result<()> {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(self.to_json().as_bytes())?;
            f.sync_all()?;
            fs::rename(&tmp, path)?;
            Ok(())
        };
        write().inspect_err(|_| {
            let _ = fs::remove_file(&tmp);
        })
    }

    /// Validate `entry`, add it to the file at `path` (created if absent),
    /// and return the updated catalog.
    pub fn append(path: &Path, entry: CatalogEntry) -> Result<Self> {
        entry.validate()?;
        let mut cat = if path.exists() { Self::load(path)? } else { Catalog::default() };
        if cat.get(&entry.name).is_some() || Catalog::builtin().get(&entry.name).is_some() {
            return Err(Error::Catalog { entry: entry.name, msg: "name already in use".into() });
        }
        cat.entries.push(entry);
        cat.save(path)?;
        Ok(cat)
    }
}
