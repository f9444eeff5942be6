//! Closed-form connectivity and diagnosability values with their validity ranges.

use serde::Serialize;
use serde_json::json;

use crate::error::{invalid, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    KappaG,
    KappaBarG,
    TG,
    TBarG,
    TC,
    UpperBoundTG,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Scope {
    #[serde(rename = "PMC")]
    Pmc,
    #[serde(rename = "MMstar")]
    MmStar,
    #[serde(rename = "both")]
    Both,
    #[serde(rename = "none")]
    NotApplicable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Value {
    Exact(i64),
    Interval(i64, i64),
}

impl Value {
    pub fn exact(&self) -> Option<i64> {
        match *self {
            Value::Exact(v) => Some(v),
            Value::Interval(..) => None,
        }
    }

    pub fn contains(&self, x: i64) -> bool {
        match *self {
            Value::Exact(v) => v == x,
            Value::Interval(lo, hi) => lo <= x && x <= hi,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GParam {
    Free,
    Fixed(usize),
}

pub struct FormulaEntry {
    pub id: &'static str,
    pub family: &'static str,
    pub quantity: Quantity,
    pub diagnostic: Scope,
    pub uses_k: bool,
    pub g: GParam,
    pub range: &'static str,
    pub citation: &'static str,
    pub notes: &'static str,
    valid: fn(i64, i64, i64) -> bool,
    eval: fn(i64, i64, i64) -> Value,
}

impl FormulaEntry {
    fn resolve(&self, n: usize, k: Option<usize>, g: Option<usize>) -> Result<(i64, i64, i64)> {
        let k = match (self.uses_k, k) {
            (true, Some(k)) => k as i64,
            (true, None) => return Err(invalid(format!("`{}` needs k", self.id))),
            (false, _) => 0,
        };
        let g = match (self.g, g) {
            (GParam::Free, Some(g)) => g as i64,
            (GParam::Free, None) => return Err(invalid(format!("`{}` needs g", self.id))),
            (GParam::Fixed(f), None) => f as i64,
            (GParam::Fixed(f), Some(g)) if g == f => f as i64,
            (GParam::Fixed(f), Some(g)) => {
                return Err(self.out_of_range(n as i64, k, g as i64, &format!("g is fixed at {f}")))
            }
        };
        Ok((n as i64, k, g))
    }

    fn out_of_range(&self, n: i64, k: i64, g: i64, extra: &str) -> Error {
        let mut params = format!("n={n}");
        if self.uses_k {
            params.push_str(&format!(", k={k}"));
        }
        params.push_str(&format!(", g={g}"));
        let range = if extra.is_empty() { self.range.to_string() } else { format!("{}; {extra}", self.range) };
        Error::OutOfRange { id: self.id.to_string(), params, range }
    }

    pub fn in_range(&self, n: usize, k: Option<usize>, g: Option<usize>) -> bool {
        self.resolve(n, k, g).map(|(n, k, g)| (self.valid)(n, k, g)).unwrap_or(false)
    }

    pub fn evaluate(&self, n: usize, k: Option<usize>, g: Option<usize>) -> Result<Value> {
        let (n, k, g) = self.resolve(n, k, g)?;
        if !(self.valid)(n, k, g) {
            return Err(self.out_of_range(n, k, g, ""));
        }
        Ok((self.eval)(n, k, g))
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "id": self.id,
            "quantity": self.quantity,
            "family": self.family,
            "diagnostic": self.diagnostic,
            "range": self.range,
            "citation": self.citation,
            "notes": self.notes,
        })
    }
}

fn ex(v: i64) -> Value {
    Value::Exact(v)
}

/// Twice the extended hypercube g-extra connectivity, or `None` outside every branch.
fn kappa_bar_q_ext_twice(n: i64, g: i64) -> Option<i64> {
    let h = g + 1;
    if n >= 5 && (0..=n - 4).contains(&g) {
        Some(-h * h + (2 * n - 1) * h + 2)
    } else if n >= 5 && (n - 3..=n).contains(&g) {
        Some(-(n - 2) * (n - 2) + (2 * n - 1) * (n - 2) + 2)
    } else if n >= 7 && (n + 1..=2 * n - 5).contains(&g) {
        Some(-h * h + (4 * n - 3) * h - 2 * n * n + 4)
    } else if n >= 7 && (2 * n - 4..=2 * n - 1).contains(&g) {
        Some(-(2 * n - 3) * (2 * n - 3) + (4 * n - 3) * (2 * n - 3) - 2 * n * n + 4)
    } else if n >= 9 && (2 * n..=3 * n - 7).contains(&g) {
        Some(-h * h + (6 * n - 7) * h - 6 * n * n + 8 * n + 4)
    } else {
        None
    }
}

fn kappa_bar_q_ext(n: i64, g: i64) -> i64 {
    kappa_bar_q_ext_twice(n, g).expect("checked by the range predicate") / 2
}

fn q_mmstar_special(n: i64, g: i64) -> Option<i64> {
    match (n, g) {
        (3, 1) => Some(3),
        (4, 1) => Some(5),
        _ => None,
    }
}

fn a_t1_mmstar_range(n: i64, k: i64) -> bool {
    (n >= 6 && (5..n - 1).contains(&k)) || (n >= 11 && (10..n).contains(&k))
}

static CATALOG: &[FormulaEntry] = &[
    FormulaEntry {
        id: "kappa_g_nkstar",
        family: "nk_star",
        quantity: Quantity::KappaG,
        diagnostic: Scope::NotApplicable,
        uses_k: true,
        g: GParam::Free,
        range: "n >= 3, 2 <= k < n, 0 <= g <= n - k",
        citation: "g-good-neighbor connectivity of the (n,k)-star graph is n + g(k-2) - 1",
        notes: "",
        valid: |n, k, g| n >= 3 && 2 <= k && k < n && 0 <= g && g <= n - k,
        eval: |n, k, g| ex(n + g * (k - 2) - 1),
    },
    FormulaEntry {
        id: "t_g_nkstar_pmc",
        family: "nk_star",
        quantity: Quantity::TG,
        diagnostic: Scope::Pmc,
        uses_k: true,
        g: GParam::Free,
        range: "n >= 4, 2 <= k < n, 0 <= g <= n - k",
        citation: "g-good-neighbor diagnosability of the (n,k)-star graph under PMC is n + g(k-1) - 1",
        notes: "",
        valid: |n, k, g| n >= 4 && 2 <= k && k < n && 0 <= g && g <= n - k,
        eval: |n, k, g| ex(n + g * (k - 1) - 1),
    },
    FormulaEntry {
        id: "upper_t_g_nkstar",
        family: "nk_star",
        quantity: Quantity::UpperBoundTG,
        diagnostic: Scope::Both,
        uses_k: true,
        g: GParam::Free,
        range: "n >= 4, 2 <= k < n, 0 <= g <= n - k",
        citation: "g-good-neighbor diagnosability of the (n,k)-star graph is at most n + g(k-1) - 1 under PMC and MM*",
        notes: "upper bound",
        valid: |n, k, g| n >= 4 && 2 <= k && k < n && 0 <= g && g <= n - k,
        eval: |n, k, g| ex(n + g * (k - 1) - 1),
    },
    FormulaEntry {
        id: "upper_t_g_arrangement",
        family: "arrangement",
        quantity: Quantity::UpperBoundTG,
        diagnostic: Scope::Both,
        uses_k: true,
        g: GParam::Free,
        range: "n >= 3, 2 <= k < n, 0 <= g < n - k",
        citation: "g-good-neighbor diagnosability of the arrangement graph is at most (n-k)[(g+1)(k-1)+1]",
        notes: "upper bound",
        valid: |n, k, g| n >= 3 && 2 <= k && k < n && 0 <= g && g < n - k,
        eval: |n, k, g| ex((n - k) * ((g + 1) * (k - 1) + 1)),
    },
    FormulaEntry {
        id: "kappa_2_arrangement_k2",
        family: "arrangement",
        quantity: Quantity::KappaG,
        diagnostic: Scope::NotApplicable,
        uses_k: true,
        g: GParam::Fixed(2),
        range: "n >= 8, k = 2",
        citation: "2-good-neighbor connectivity of A(n,2) is 4n - 12",
        notes: "",
        valid: |n, k, _| n >= 8 && k == 2,
        eval: |n, _, _| ex(4 * n - 12),
    },
    FormulaEntry {
        id: "kappa_2_arrangement",
        family: "arrangement",
        quantity: Quantity::KappaG,
        diagnostic: Scope::NotApplicable,
        uses_k: true,
        g: GParam::Fixed(2),
        range: "n >= 8, k in [3, n-5] or k in {n-2, n-1}",
        citation: "2-good-neighbor connectivity of the arrangement graph is (3k-2)(n-k) - 2",
        notes: "n >= 8 applied to both k ranges",
        valid: |n, k, _| n >= 8 && ((3 <= k && k <= n - 5) || k == n - 2 || k == n - 1),
        eval: |n, k, _| ex((3 * k - 2) * (n - k) - 2),
    },
    FormulaEntry {
        id: "t_2_arrangement_mmstar",
        family: "arrangement",
        quantity: Quantity::TG,
        diagnostic: Scope::MmStar,
        uses_k: true,
        g: GParam::Fixed(2),
        range: "n >= 7, 4 <= k < n - 1",
        citation: "2-good-neighbor diagnosability of the arrangement graph under MM* is (3k-2)(n-k)",
        notes: "",
        valid: |n, k, _| n >= 7 && 4 <= k && k < n - 1,
        eval: |n, k, _| ex((3 * k - 2) * (n - k)),
    },
    FormulaEntry {
        id: "kappa_1_arrangement",
        family: "arrangement",
        quantity: Quantity::KappaG,
        diagnostic: Scope::NotApplicable,
        uses_k: true,
        g: GParam::Fixed(1),
        range: "n >= 3, n != 4, 2 <= k < n",
        citation: "1-good-neighbor connectivity of the arrangement graph is (2k-1)(n-k) - 1",
        notes: "",
        valid: |n, k, _| n >= 3 && n != 4 && 2 <= k && k < n,
        eval: |n, k, _| ex((2 * k - 1) * (n - k) - 1),
    },
    FormulaEntry {
        id: "kappa_1_arrangement_special",
        family: "arrangement",
        quantity: Quantity::KappaG,
        diagnostic: Scope::NotApplicable,
        uses_k: true,
        g: GParam::Fixed(1),
        range: "n = 4, k in {2, 3}",
        citation: "1-good-neighbor connectivity of A(4,2) and A(4,3) is 4",
        notes: "",
        valid: |n, k, _| n == 4 && (k == 2 || k == 3),
        eval: |_, _, _| ex(4),
    },
    FormulaEntry {
        id: "t_1_arrangement_mmstar",
        family: "arrangement",
        quantity: Quantity::TG,
        diagnostic: Scope::MmStar,
        uses_k: true,
        g: GParam::Fixed(1),
        range: "n >= 6 and 5 <= k < n - 1, or n >= 11 and 10 <= k < n",
        citation: "1-good-neighbor diagnosability of the arrangement graph under MM* is (2k-1)(n-k)",
        notes: "",
        valid: |n, k, _| a_t1_mmstar_range(n, k),
        eval: |n, k, _| ex((2 * k - 1) * (n - k)),
    },
    FormulaEntry {
        id: "kappa_bar_g_hypercube",
        family: "hypercube",
        quantity: Quantity::KappaBarG,
        diagnostic: Scope::NotApplicable,
        uses_k: false,
        g: GParam::Free,
        range: "n >= 4, 0 <= g <= n - 3",
        citation: "g-extra connectivity of Q_n is (g+1)[2(n-1)-g]/2 + 1",
        notes: "",
        valid: |n, _, g| n >= 4 && 0 <= g && g <= n - 3,
        eval: |n, _, g| ex((g + 1) * (2 * (n - 1) - g) / 2 + 1),
    },
    FormulaEntry {
        id: "kappa_bar_g_hypercube_extended",
        family: "hypercube",
        quantity: Quantity::KappaBarG,
        diagnostic: Scope::NotApplicable,
        uses_k: false,
        g: GParam::Free,
        range: "n >= 5, g in [0, n]; n >= 7, g in [n+1, 2n-1]; n >= 9, g in [2n, 3n-7]",
        citation: "g-extra connectivity of Q_n, piecewise in g over five branches up to g = 3n - 7",
        notes: "",
        valid: |n, _, g| kappa_bar_q_ext_twice(n, g).is_some(),
        eval: |n, _, g| ex(kappa_bar_q_ext(n, g)),
    },
    FormulaEntry {
        id: "t_bar_g_hypercube_pmc",
        family: "hypercube",
        quantity: Quantity::TBarG,
        diagnostic: Scope::Pmc,
        uses_k: false,
        g: GParam::Free,
        range: "n >= 4, 1 <= g <= n - 3",
        citation: "g-extra diagnosability of Q_n under PMC is (g+1)(2n-g)/2",
        notes: "",
        valid: |n, _, g| n >= 4 && 1 <= g && g <= n - 3,
        eval: |n, _, g| ex((g + 1) * (2 * n - g) / 2),
    },
    FormulaEntry {
        id: "t_bar_g_hypercube_pmc_extended",
        family: "hypercube",
        quantity: Quantity::TBarG,
        diagnostic: Scope::Pmc,
        uses_k: false,
        g: GParam::Free,
        range: "n >= 9, 0 <= g <= 3n - 7",
        citation: "g-extra diagnosability of Q_n under PMC equals its g-extra connectivity plus g",
        notes: "",
        valid: |n, _, g| n >= 9 && 0 <= g && g <= 3 * n - 7,
        eval: |n, _, g| ex(kappa_bar_q_ext(n, g) + g),
    },
    FormulaEntry {
        id: "t_bar_g_hypercube_mmstar",
        family: "hypercube",
        quantity: Quantity::TBarG,
        diagnostic: Scope::MmStar,
        uses_k: false,
        g: GParam::Free,
        range: "(n, g) in {(3, 1), (4, 1)}, or n >= 5 and 1 <= g <= n - 3",
        citation: "1-extra diagnosability of Q_3 and Q_4 under MM* is 3 and 5; for larger n the g-extra value is (g+1)(2n-g)/2",
        notes: "the small cases are not of the form connectivity plus g",
        valid: |n, _, g| q_mmstar_special(n, g).is_some() || (n >= 5 && 1 <= g && g <= n - 3),
        eval: |n, _, g| ex(q_mmstar_special(n, g).unwrap_or((g + 1) * (2 * n - g) / 2)),
    },
    FormulaEntry {
        id: "t_bar_g_hypercube_mmstar_extended",
        family: "hypercube",
        quantity: Quantity::TBarG,
        diagnostic: Scope::MmStar,
        uses_k: false,
        g: GParam::Free,
        range: "(n, g) in {(3, 1), (4, 1)}, or n >= 5 and g in [0, 3n-7] where the extended g-extra connectivity is defined",
        citation: "g-extra diagnosability of Q_n under MM* equals its extended g-extra connectivity plus g",
        notes: "range follows the extended connectivity branches, which start at n >= 5",
        valid: |n, _, g| {
            q_mmstar_special(n, g).is_some()
                || (n >= 5 && 0 <= g && g <= 3 * n - 7 && kappa_bar_q_ext_twice(n, g).is_some())
        },
        eval: |n, _, g| ex(q_mmstar_special(n, g).unwrap_or_else(|| kappa_bar_q_ext(n, g) + g)),
    },
    FormulaEntry {
        id: "t_bar_1_nkstar",
        family: "nk_star",
        quantity: Quantity::TBarG,
        diagnostic: Scope::Both,
        uses_k: true,
        g: GParam::Fixed(1),
        range: "n >= 4, 2 <= k < n",
        citation: "1-extra diagnosability of the (n,k)-star graph is n + k - 2 under PMC and MM*",
        notes: "exhaustive search on S(4,2) and S(5,2) under MM* gives n + k - 3; PMC and k >= 3 agree",
        valid: |n, k, _| n >= 4 && 2 <= k && k < n,
        eval: |n, k, _| ex(n + k - 2),
    },
    FormulaEntry {
        id: "kappa_bar_g_nkstar",
        family: "nk_star",
        quantity: Quantity::KappaBarG,
        diagnostic: Scope::NotApplicable,
        uses_k: true,
        g: GParam::Free,
        range: "n >= 4, 3 <= k < n, 1 <= g <= n - k",
        citation: "g-extra connectivity of the (n,k)-star graph is n + g(k-2) - 1",
        notes: "",
        valid: |n, k, g| n >= 4 && 3 <= k && k < n && 1 <= g && g <= n - k,
        eval: |n, k, g| ex(n + g * (k - 2) - 1),
    },
    FormulaEntry {
        id: "t_bar_g_nkstar_pmc",
        family: "nk_star",
        quantity: Quantity::TBarG,
        diagnostic: Scope::Pmc,
        uses_k: true,
        g: GParam::Free,
        range: "n >= 4, 3 <= k < n, 1 <= g <= n - k",
        citation: "g-extra diagnosability of the (n,k)-star graph under PMC is n + g(k-1) - 1",
        notes: "",
        valid: |n, k, g| n >= 4 && 3 <= k && k < n && 1 <= g && g <= n - k,
        eval: |n, k, g| ex(n + g * (k - 1) - 1),
    },
    FormulaEntry {
        id: "t_bar_g_nkstar_mmstar",
        family: "nk_star",
        quantity: Quantity::TBarG,
        diagnostic: Scope::MmStar,
        uses_k: true,
        g: GParam::Free,
        range: "n >= 4, 3 <= k < n, 1 <= g <= n - k",
        citation: "g-extra diagnosability of the (n,k)-star graph under MM* is n + g(k-1) - 1",
        notes: "",
        valid: |n, k, g| n >= 4 && 3 <= k && k < n && 1 <= g && g <= n - k,
        eval: |n, k, g| ex(n + g * (k - 1) - 1),
    },
    FormulaEntry {
        id: "t_bar_1_arrangement_pmc",
        family: "arrangement",
        quantity: Quantity::TBarG,
        diagnostic: Scope::Pmc,
        uses_k: true,
        g: GParam::Fixed(1),
        range: "n >= 5, 2 <= k < n",
        citation: "1-extra diagnosability of the arrangement graph under PMC is (2k-1)(n-k)",
        notes: "",
        valid: |n, k, _| n >= 5 && 2 <= k && k < n,
        eval: |n, k, _| ex((2 * k - 1) * (n - k)),
    },
    FormulaEntry {
        id: "t_bar_1_arrangement_mmstar",
        family: "arrangement",
        quantity: Quantity::TBarG,
        diagnostic: Scope::MmStar,
        uses_k: true,
        g: GParam::Fixed(1),
        range: "n >= 6 and 5 <= k < n - 1, or n >= 11 and 10 <= k < n",
        citation: "1-extra diagnosability of the arrangement graph under MM* is (2k-1)(n-k)",
        notes: "",
        valid: |n, k, _| a_t1_mmstar_range(n, k),
        eval: |n, k, _| ex((2 * k - 1) * (n - k)),
    },
    FormulaEntry {
        id: "kappa_bar_2_arrangement",
        family: "arrangement",
        quantity: Quantity::KappaBarG,
        diagnostic: Scope::NotApplicable,
        uses_k: true,
        g: GParam::Fixed(2),
        range: "n >= 8, 3 <= k <= n - 5",
        citation: "2-extra connectivity of the arrangement graph is (3k-2)(n-k) - 3",
        notes: "",
        valid: |n, k, _| n >= 8 && 3 <= k && k <= n - 5,
        eval: |n, k, _| ex((3 * k - 2) * (n - k) - 3),
    },
    FormulaEntry {
        id: "t_bar_2_arrangement",
        family: "arrangement",
        quantity: Quantity::TBarG,
        diagnostic: Scope::Both,
        uses_k: true,
        g: GParam::Fixed(2),
        range: "n >= 8, 3 <= k <= n - 5",
        citation: "2-extra diagnosability of the arrangement graph is (3k-2)(n-k) - 1 under PMC and MM*",
        notes: "the PMC value is also reported for n >= 6, 4 <= k <= n - 2; only the range printed with the statement is used",
        valid: |n, k, _| n >= 8 && 3 <= k && k <= n - 5,
        eval: |n, k, _| ex((3 * k - 2) * (n - k) - 1),
    },
    FormulaEntry {
        id: "kappa_bar_3_arrangement",
        family: "arrangement",
        quantity: Quantity::KappaBarG,
        diagnostic: Scope::NotApplicable,
        uses_k: true,
        g: GParam::Fixed(3),
        range: "n >= 6, 3 <= k <= n - 3 or 4 <= k <= n - 2",
        citation: "3-extra connectivity of the arrangement graph is 4(k-1)(n-k) - 4",
        notes: "",
        valid: |n, k, _| n >= 6 && ((3 <= k && k <= n - 3) || (4 <= k && k <= n - 2)),
        eval: |n, k, _| ex(4 * (k - 1) * (n - k) - 4),
    },
    FormulaEntry {
        id: "t_bar_3_arrangement",
        family: "arrangement",
        quantity: Quantity::TBarG,
        diagnostic: Scope::Both,
        uses_k: true,
        g: GParam::Fixed(3),
        range: "n >= 7, 4 <= k <= n - 3",
        citation: "3-extra diagnosability of the arrangement graph is 4(k-1)(n-k) - 1 under PMC and MM*",
        notes: "also reported for n >= 6, 3 <= k <= n - 3; only the range printed with the statement is used",
        valid: |n, k, _| n >= 7 && 4 <= k && k <= n - 3,
        eval: |n, k, _| ex(4 * (k - 1) * (n - k) - 1),
    },
    FormulaEntry {
        id: "t_3_arrangement_interval",
        family: "arrangement",
        quantity: Quantity::TG,
        diagnostic: Scope::Both,
        uses_k: true,
        g: GParam::Fixed(3),
        range: "n >= 6, 3 <= k <= n - 3",
        citation: "3-good-neighbor diagnosability of the arrangement graph lies between 4(k-1)(n-k) - 1 and 4(k-1)(n-k) + n - k",
        notes: "interval",
        valid: |n, k, _| n >= 6 && 3 <= k && k <= n - 3,
        eval: |n, k, _| Value::Interval(4 * (k - 1) * (n - k) - 1, 4 * (k - 1) * (n - k) + n - k),
    },
    FormulaEntry {
        id: "t_1_nkstar",
        family: "nk_star",
        quantity: Quantity::TG,
        diagnostic: Scope::Both,
        uses_k: true,
        g: GParam::Fixed(1),
        range: "n >= 4, 3 <= k < n",
        citation: "1-good-neighbor diagnosability of the (n,k)-star graph is n + k - 2",
        notes: "",
        valid: |n, k, _| n >= 4 && 3 <= k && k < n,
        eval: |n, k, _| ex(n + k - 2),
    },
    FormulaEntry {
        id: "t_c_nkstar",
        family: "nk_star",
        quantity: Quantity::TC,
        diagnostic: Scope::Both,
        uses_k: true,
        g: GParam::Fixed(0),
        range: "n >= 4, 3 <= k < n",
        citation: "conditional diagnosability of the (n,k)-star graph is n + 2k - 5",
        notes: "",
        valid: |n, k, _| n >= 4 && 3 <= k && k < n,
        eval: |n, k, _| ex(n + 2 * k - 5),
    },
];

pub fn catalog() -> &'static [FormulaEntry] {
    CATALOG
}

pub fn entry(id: &str) -> Result<&'static FormulaEntry> {
    CATALOG.iter().find(|e| e.id == id).ok_or_else(|| Error::UnknownFormula(id.to_string()))
}

pub fn evaluate(id: &str, n: usize, k: Option<usize>, g: Option<usize>) -> Result<Value> {
    entry(id)?.evaluate(n, k, g)
}

pub fn catalog_json() -> serde_json::Value {
    serde_json::Value::Array(CATALOG.iter().map(FormulaEntry::to_json).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossCheck {
    pub id: String,
    pub params: String,
    pub formula: Option<Value>,
    pub observed: i64,
    pub pass: bool,
    pub message: String,
}

/// Compares an entry against an independently computed value. Out-of-range
/// parameters are reported as failures.
pub fn cross_check(id: &str, n: usize, k: Option<usize>, g: Option<usize>, observed: i64) -> CrossCheck {
    let params = format!("n={n}, k={k:?}, g={g:?}");
    match evaluate(id, n, k, g) {
        Ok(v) => CrossCheck {
            id: id.into(),
            params,
            formula: Some(v),
            observed,
            pass: v.contains(observed),
            message: if v.contains(observed) { "match".into() } else { "mismatch".into() },
        },
        Err(e) => CrossCheck { id: id.into(), params, formula: None, observed, pass: false, message: e.to_string() },
    }
}

/// A formula-level disagreement found by the consistency checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Inconsistency {
    pub check: String,
    pub params: String,
    pub detail: String,
}

const GRID_N: std::ops::RangeInclusive<usize> = 3..=16;

fn grid() -> impl Iterator<Item = (usize, usize, usize)> {
    GRID_N.flat_map(|n| (1..n).flat_map(move |k| (0..=3 * n).map(move |g| (n, k, g))))
}

fn exact(id: &str, n: usize, k: usize, g: usize) -> Option<i64> {
    let e = entry(id).ok()?;
    let k = e.uses_k.then_some(k);
    let gv = match e.g {
        GParam::Free => Some(g),
        GParam::Fixed(f) if f == g => None,
        GParam::Fixed(_) => return None,
    };
    e.evaluate(n, k, gv).ok()?.exact()
}

/// Pairs `(diagnosability, connectivity)` expected to differ by exactly `g`.
pub const IDENTITY_PAIRS: &[(&str, &str)] = &[
    ("t_bar_g_hypercube_pmc", "kappa_bar_g_hypercube"),
    ("t_bar_g_hypercube_pmc", "kappa_bar_g_hypercube_extended"),
    ("t_bar_g_hypercube_pmc_extended", "kappa_bar_g_hypercube_extended"),
    ("t_bar_g_hypercube_pmc_extended", "kappa_bar_g_hypercube"),
    ("t_bar_g_nkstar_pmc", "kappa_bar_g_nkstar"),
    ("t_bar_g_nkstar_mmstar", "kappa_bar_g_nkstar"),
    ("t_g_nkstar_pmc", "kappa_g_nkstar"),
    ("t_bar_2_arrangement", "kappa_bar_2_arrangement"),
    ("t_bar_3_arrangement", "kappa_bar_3_arrangement"),
    ("t_2_arrangement_mmstar", "kappa_2_arrangement"),
    ("t_1_arrangement_mmstar", "kappa_1_arrangement"),
];

/// Every internal consistency check of the catalog over a parameter grid.
pub fn consistency_report() -> Vec<Inconsistency> {
    let mut out = Vec::new();
    let mut bad = |check: &str, n: usize, k: usize, g: usize, detail: String| {
        out.push(Inconsistency { check: check.into(), params: format!("n={n}, k={k}, g={g}"), detail });
    };
    for n in 5..=12 {
        for g in 0..=n - 4 {
            let a = exact("kappa_bar_g_hypercube", n, 0, g);
            let b = exact("kappa_bar_g_hypercube_extended", n, 0, g);
            if a.is_none() || a != b {
                bad("hypercube branches agree on overlap", n, 0, g, format!("{a:?} vs {b:?}"));
            }
        }
    }
    for (n, k, g) in grid() {
        for (t_id, kappa_id) in IDENTITY_PAIRS {
            if let (Some(t), Some(kappa)) = (exact(t_id, n, k, g), exact(kappa_id, n, k, g)) {
                if t != kappa + g as i64 {
                    bad("diagnosability = connectivity + g", n, k, g, format!("{t_id}={t}, {kappa_id}={kappa}"));
                }
            }
        }
        if let (Some(t), Some(kappa)) =
            (exact("t_bar_g_hypercube_mmstar", n, 0, g), exact("kappa_bar_g_hypercube", n, 0, g))
        {
            if n >= 5 && t != kappa + g as i64 {
                bad("diagnosability = connectivity + g", n, k, g, format!("hypercube MM* {t} vs {kappa}"));
            }
        }
        if let (Some(bar), Some(good)) =
            (exact("t_bar_2_arrangement", n, k, 2), exact("t_2_arrangement_mmstar", n, k, 2))
        {
            if g == 2 && bar >= good {
                bad("2-extra below 2-good-neighbor", n, k, g, format!("{bar} >= {good}"));
            }
        }
    }
    for e in CATALOG.iter().filter(|e| e.g == GParam::Free && matches!(e.quantity, Quantity::TG | Quantity::TBarG)) {
        for (n, k, g) in grid() {
            let k = e.uses_k.then_some(k);
            if let (Ok(Value::Exact(a)), Ok(Value::Exact(b))) =
                (e.evaluate(n, k, Some(g)), e.evaluate(n, k, Some(g + 1)))
            {
                if a > b {
                    bad("monotone in g", n, k.unwrap_or(0), g, format!("{}: {a} > {b}", e.id));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique() {
        let mut ids: Vec<&str> = CATALOG.iter().map(|e| e.id).collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), CATALOG.len());
    }

    #[test]
    fn worked_values() {
        assert_eq!(evaluate("t_bar_2_arrangement", 8, Some(3), None).unwrap(), Value::Exact(34));
        assert_eq!(evaluate("kappa_bar_g_hypercube_extended", 9, None, Some(18)).unwrap(), Value::Exact(61));
        assert_eq!(evaluate("t_bar_g_nkstar_pmc", 5, Some(3), Some(2)).unwrap(), Value::Exact(8));
        assert_eq!(evaluate("kappa_bar_g_hypercube", 4, None, Some(1)).unwrap(), Value::Exact(6));
        assert_eq!(evaluate("kappa_1_arrangement_special", 4, Some(2), None).unwrap(), Value::Exact(4));
        assert_eq!(evaluate("t_bar_g_hypercube_mmstar", 4, None, Some(1)).unwrap(), Value::Exact(5));
        assert_eq!(evaluate("t_bar_g_hypercube_mmstar", 3, None, Some(1)).unwrap(), Value::Exact(3));
        assert_eq!(evaluate("t_bar_g_hypercube_pmc", 4, None, Some(1)).unwrap(), Value::Exact(7));
        assert_eq!(evaluate("kappa_g_nkstar", 4, Some(2), Some(1)).unwrap(), Value::Exact(3));
        assert_eq!(evaluate("t_3_arrangement_interval", 7, Some(4), None).unwrap(), Value::Interval(35, 39));
    }

    #[test]
    fn range_discipline() {
        assert!(matches!(evaluate("kappa_bar_g_hypercube", 3, None, Some(0)), Err(Error::OutOfRange { .. })));
        assert!(matches!(evaluate("kappa_1_arrangement", 4, Some(2), None), Err(Error::OutOfRange { .. })));
        assert!(matches!(evaluate("t_bar_2_arrangement", 8, Some(3), Some(1)), Err(Error::OutOfRange { .. })));
        assert!(matches!(evaluate("kappa_bar_g_hypercube_extended", 9, None, Some(21)), Err(Error::OutOfRange { .. })));
        assert!(matches!(evaluate("nope", 9, None, None), Err(Error::UnknownFormula(_))));
        assert!(evaluate("t_bar_g_nkstar_pmc", 5, None, Some(1)).is_err());
        let err = evaluate("kappa_bar_g_hypercube", 3, None, Some(0)).unwrap_err().to_string();
        assert!(err.contains("n >= 4"), "{err}");
    }

    #[test]
    fn extended_branches_are_integral() {
        for n in 5..=20 {
            for g in 0..=3 * n {
                if let Some(v) = kappa_bar_q_ext_twice(n as i64, g as i64) {
                    assert_eq!(v % 2, 0, "n={n} g={g}");
                }
            }
        }
    }

    #[test]
    fn catalog_is_self_consistent() {
        let report = consistency_report();
        assert!(report.is_empty(), "{report:#?}");
    }

    #[test]
    fn cross_check_reports() {
        assert!(cross_check("kappa_bar_g_hypercube", 4, None, Some(1), 6).pass);
        assert!(!cross_check("kappa_bar_g_hypercube", 4, None, Some(1), 7).pass);
        assert!(!cross_check("kappa_bar_g_hypercube", 2, None, Some(1), 7).pass);
        assert!(cross_check("t_3_arrangement_interval", 7, Some(4), None, 37).pass);
    }

    #[test]
    fn dump_lists_every_entry() {
        let dump = catalog_json();
        assert_eq!(dump.as_array().unwrap().len(), CATALOG.len());
        assert!(dump.to_string().contains("\"range\""));
    }
}
