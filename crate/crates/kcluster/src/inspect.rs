//! Text dumps of the normal form and the clique sequence.

use std::fmt::Write as _;

use kcluster_core::{maximal_cliques, stairs, NirForm, Relabeling, SnirForm};

fn join(items: impl IntoIterator<Item = usize>, sep: &str) -> String {
    items.into_iter().map(|v| v.to_string()).collect::<Vec<_>>().join(sep)
}

/// Reach vector, input order, then the lower-triangular matrix: `1`/`0`
/// below the diagonal, `0` on it, `.` above it.
pub fn render_nir(f: &NirForm, labels: &Relabeling) -> String {
    let n = f.n();
    let mut out = String::new();
    writeln!(out, "reach: {}", join(f.reach_vec().iter().copied(), " ")).unwrap();
    writeln!(out, "input order: {}", join(labels.as_slice().iter().copied(), " ")).unwrap();
    for i in 1..=n {
        let row: String = (1..=n)
            .map(|j| match j.cmp(&i) {
                std::cmp::Ordering::Less => {
                    if f.entry(i, j).unwrap() {
                        '1'
                    } else {
                        '0'
                    }
                }
                std::cmp::Ordering::Equal => '0',
                std::cmp::Ordering::Greater => '.',
            })
            .collect();
        writeln!(out, "{row}").unwrap();
    }
    out
}

/// One line per clique, `Q<i>={..} @row a_i`, with the pick `(a_i, b_i)`
/// appended when the form is stair-shaped.
pub fn render_cliques(f: &NirForm) -> String {
    let c = maximal_cliques(f);
    let picks = SnirForm::from_nir(f.clone()).ok().map(|s| stairs(&s));
    let mut out = String::new();
    writeln!(out, "m = {}", c.len()).unwrap();
    for i in 1..=c.len() {
        write!(out, "Q{i}={{{}}} @row {}", join(c.members(i), ","), c.anchor(i)).unwrap();
        if let Some(p) = &picks {
            let (a, b) = p.picks()[i - 1];
            write!(out, " pick ({a},{b})").unwrap();
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_matrix() {
        let f = NirForm::new(vec![1, 1, 0]).unwrap();
        let text = render_nir(&f, &Relabeling::identity(3));
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "reach: 1 1 0");
        assert_eq!(&lines[2..], ["0..", "10.", "010"]);
    }

    #[test]
    fn star_cliques() {
        let f = NirForm::new(vec![3, 0, 0, 0]).unwrap();
        let text = render_cliques(&f);
        assert!(text.contains("Q1={1,2} @row 2\n"));
        assert!(text.contains("Q3={1,4} @row 4\n"));
        let p = NirForm::new(vec![1, 1, 1, 0]).unwrap();
        assert!(render_cliques(&p).contains("Q2={2,3} @row 3 pick (3,2)"));
    }
}
