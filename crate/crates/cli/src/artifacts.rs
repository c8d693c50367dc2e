use std::fs;
use std::path::Path;

use randgap_core::construction::{base_names, build_tower, extended_names, Tower};
use randgap_core::gapcore::RandomSubsetName;

use crate::CliError;

pub const TOWER: &str = "tower.txt";
pub const BASE: &str = "base_names.txt";
pub const EXTENDED: &str = "extended_names.txt";

pub type NamePairs = Vec<(RandomSubsetName, RandomSubsetName)>;

/// The tower and both name tables, built in-process.
pub struct Artifacts {
    pub tower: Tower,
    pub base: NamePairs,
    pub extended: NamePairs,
}

impl Artifacts {
    pub fn build(generators: usize, horizon: usize) -> Result<Self, CliError> {
        let tower = build_tower(generators, horizon)?;
        let base = (0..generators).map(|a| base_names(a as u64, horizon)).collect();
        let extended = (0..generators).map(|a| extended_names(&tower, a)).collect();
        Ok(Artifacts { tower, base, extended })
    }

    pub fn load(dir: &Path) -> Result<Self, CliError> {
        let read = |name: &str| {
            let path = dir.join(name);
            fs::read_to_string(&path).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))
        };
        let tower: Tower = read(TOWER)?.parse()?;
        let base = parse_names(&read(BASE)?, ["c", "d"])?;
        let extended = parse_names(&read(EXTENDED)?, ["a", "b"])?;
        for (file, names) in [(BASE, &base), (EXTENDED, &extended)] {
            let shape_ok = names.len() == tower.generators()
                && names.iter().all(|(x, y)| x.horizon() == tower.horizon() && y.horizon() == tower.horizon());
            if !shape_ok {
                return Err(CliError::Invalid(format!(
                    "{file} does not match the tower's {} generators and horizon {}",
                    tower.generators(),
                    tower.horizon()
                )));
            }
        }
        Ok(Artifacts { tower, base, extended })
    }

    /// Writes the three files; returns `(file, bytes)` per file.
    pub fn write(&self, dir: &Path) -> Result<Vec<(&'static str, usize)>, CliError> {
        fs::create_dir_all(dir).map_err(|e| CliError::Invalid(format!("{}: {e}", dir.display())))?;
        let files = [
            (TOWER, self.tower.to_string()),
            (BASE, render_names(&self.base, ["c", "d"], self.tower.horizon())),
            (EXTENDED, render_names(&self.extended, ["a", "b"], self.tower.horizon())),
        ];
        let mut sizes = Vec::new();
        for (name, text) in files {
            let path = dir.join(name);
            fs::write(&path, &text).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?;
            sizes.push((name, text.len()));
        }
        Ok(sizes)
    }
}

/// Sections `[c α]` followed by the name's event lines.
fn render_names(names: &NamePairs, labels: [&str; 2], horizon: usize) -> String {
    let mut out = format!("# generators = {}, horizon = {horizon}\n", names.len());
    for (alpha, (x, y)) in names.iter().enumerate() {
        for (label, name) in labels.iter().zip([x, y]) {
            out.push_str(&format!("[{label} {alpha}]\n{name}"));
        }
    }
    out
}

fn parse_names(text: &str, labels: [&str; 2]) -> Result<NamePairs, CliError> {
    let mut sections: Vec<(String, String)> = Vec::new();
    for line in text.lines() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        if let Some(head) = trimmed.strip_prefix('[').and_then(|h| h.strip_suffix(']')) {
            sections.push((head.to_string(), String::new()));
        } else if let Some((_, body)) = sections.last_mut() {
            body.push_str(line);
            body.push('\n');
        } else {
            return Err(CliError::Invalid(format!("event line before any section: {trimmed:?}")));
        }
    }
    if sections.len() % 2 != 0 {
        return Err(CliError::Invalid("names file has an unpaired section".into()));
    }
    sections
        .chunks(2)
        .enumerate()
        .map(|(alpha, pair)| {
            let mut out = Vec::with_capacity(2);
            for ((head, body), label) in pair.iter().zip(labels) {
                if *head != format!("{label} {alpha}") {
                    return Err(CliError::Invalid(format!("expected section [{label} {alpha}], found [{head}]")));
                }
                out.push(body.parse::<RandomSubsetName>().map_err(randgap_core::Error::from)?);
            }
            let y = out.pop().expect("two sections");
            let x = out.pop().expect("two sections");
            Ok((x, y))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        let built = Artifacts::build(3, 20).unwrap();
        let text = render_names(&built.extended, ["a", "b"], 20);
        let back = parse_names(&text, ["a", "b"]).unwrap();
        assert_eq!(back.len(), 3);
        for ((x, y), (u, v)) in back.iter().zip(&built.extended) {
            assert_eq!(x.events(), u.events());
            assert_eq!(y.events(), v.events());
        }
        assert!(parse_names(&text, ["c", "d"]).is_err());
    }
}
