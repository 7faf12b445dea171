//! Forest files: a line `paths k` followed by `k` lines of vertex ids.

use std::fmt::Write as _;

use crate::graph::ColoredGraph;

use super::{ForestError, PathForest};

pub fn write_forest(f: &PathForest) -> String {
    let mut out = String::new();
    writeln!(out, "paths {}", f.path_count()).unwrap();
    for p in f.paths() {
        let line: Vec<String> = p.iter().map(ToString::to_string).collect();
        writeln!(out, "{}", line.join(" ")).unwrap();
    }
    out
}

/// Parses a forest file and validates it against `g`.
pub fn parse_forest(text: &str, g: &ColoredGraph) -> Result<PathForest, ForestError> {
    let err = |line: usize, msg: &str| ForestError::Parse { line, msg: msg.to_string() };
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.starts_with('#'));
    let (hl, header) = lines.next().ok_or_else(|| err(1, "missing header"))?;
    let k: usize = header
        .strip_prefix("paths ")
        .and_then(|s| s.trim().parse().ok())
        .ok_or_else(|| err(hl + 1, "expected `paths k`"))?;
    let mut paths = Vec::with_capacity(k);
    for _ in 0..k {
        let (ln, line) = lines.next().ok_or_else(|| err(0, "fewer paths than declared"))?;
        let path = line
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| err(ln + 1, "bad vertex id")))
            .collect::<Result<Vec<usize>, _>>()?;
        paths.push(path);
    }
    if let Some((ln, _)) = lines.next() {
        return Err(err(ln + 1, "trailing content"));
    }
    PathForest::validated(g, paths)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forest::tests::k4;

    #[test]
    fn round_trip() {
        let g = k4();
        let f = PathForest::validated(&g, vec![vec![2, 0, 1], vec![3]]).unwrap();
        let text = write_forest(&f);
        assert_eq!(text, "paths 2\n2 0 1\n3\n");
        assert_eq!(parse_forest(&text, &g).unwrap(), f);
        assert!(parse_forest("paths 2\n0 1\n", &g).is_err());
        assert!(parse_forest("paths 1\n0 1 2 3\n", &g).is_err());
    }
}
