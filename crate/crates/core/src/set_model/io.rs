//! Scene files: `{"dim", "name", "primitives"}` with rational strings.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{Primitive, SetModel};
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Scene {
    dim: usize,
    name: String,
    primitives: Vec<Primitive>,
}

pub fn scene_from_json(text: &str) -> Result<SetModel> {
    let scene: Scene = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    SetModel::new(scene.dim, scene.name, scene.primitives)
}

/// Canonical rendering: sorted keys, two-space indent, trailing newline.
pub fn scene_to_json(m: &SetModel) -> String {
    let scene = Scene {
        dim: m.dim(),
        name: m.name().to_string(),
        primitives: m.primitives().to_vec(),
    };
    let value = serde_json::to_value(&scene).expect("scenes serialize");
    let mut text = serde_json::to_string_pretty(&value).expect("values serialize");
    text.push('\n');
    text
}

pub fn load_scene(path: &Path) -> Result<SetModel> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    scene_from_json(&text)
}

pub fn save_scene(m: &SetModel, path: &Path) -> Result<()> {
    std::fs::write(path, scene_to_json(m))
        .map_err(|e| Error::InvalidParameter(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    const SCENE: &str = r#"{
      "dim": 3,
      "name": "mixed",
      "primitives": [
        {"type": "point", "coords": ["1", "2", "-3/2"]},
        {"type": "segment", "a": ["0", "0", "0"], "b": ["1", "0", "0"]},
        {"type": "box", "lo": ["0", "0", "0"], "hi": ["1", "1", "1"]},
        {"type": "polytope", "vertices": [["0","0","0"], ["1","0","0"], ["0","1","0"]]}
      ]
    }"#;

    #[test]
    fn round_trip_is_canonical() {
        let m = scene_from_json(SCENE).unwrap();
        assert_eq!(m.primitives().len(), 4);
        let text = scene_to_json(&m);
        assert!(text.contains("\"-3/2\""));
        let again = scene_to_json(&scene_from_json(&text).unwrap());
        assert_eq!(text, again);
    }

    #[test]
    fn rejects_bad_scenes() {
        assert!(scene_from_json(r#"{"dim": 3, "name": "x", "primitives": []}"#).is_err());
        let wrong_dim = r#"{"dim": 3, "name": "x", "primitives": [{"type":"point","coords":["1","2"]}]}"#;
        assert!(matches!(scene_from_json(wrong_dim), Err(Error::DimensionMismatch { .. })));
        assert!(scene_from_json(r#"{"dim": 3"#).is_err());
        let bad_box = r#"{"dim": 2, "name": "x", "primitives": [{"type":"box","lo":["1","0"],"hi":["0","0"]}]}"#;
        assert!(scene_from_json(bad_box).is_err());
    }
}
