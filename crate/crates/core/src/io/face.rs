//! Face posets of simplicial complexes.

use std::collections::BTreeSet;

use crate::decomposition::Decomposition;
use crate::error::{Error, Result};
use crate::order::{Poset, Proset};
use crate::topology::FiniteSpace;

const MAX_FACET_SIZE: usize = 16;

#[derive(Clone, Debug)]
pub struct FaceModel {
    pub poset: Poset,
    pub space: FiniteSpace,
    /// Vertex lists of the faces, indexed like the poset elements.
    pub faces: Vec<Vec<String>>,
}

impl FaceModel {
    /// Strata `dim0`, `dim1`, … grouping faces by dimension.
    pub fn skeleton_decomposition(&self) -> Result<Decomposition> {
        let top = self.faces.iter().map(Vec::len).max().unwrap_or(0);
        let ids: Vec<String> = (0..top).map(|d| format!("dim{d}")).collect();
        let labels: Vec<usize> = self.faces.iter().map(|f| f.len() - 1).collect();
        Decomposition::from_labels(self.space.clone(), &ids, &labels)
    }
}

fn face_name(face: &[String]) -> String {
    format!("{{{}}}", face.join(","))
}

/// All nonempty faces of the given facets ordered by inclusion.
pub fn face_poset_model<S: AsRef<str>>(facets: &[Vec<S>]) -> Result<FaceModel> {
    let mut faces: BTreeSet<(usize, Vec<String>)> = BTreeSet::new();
    for facet in facets {
        let vertices: BTreeSet<String> = facet.iter().map(|v| v.as_ref().to_owned()).collect();
        if vertices.is_empty() {
            return Err(Error::EmptyFacet);
        }
        if vertices.len() > MAX_FACET_SIZE {
            return Err(Error::TooLarge {
                what: "facet",
                n: vertices.len(),
                limit: MAX_FACET_SIZE,
            });
        }
        let vertices: Vec<String> = vertices.into_iter().collect();
        for mask in 1u32..(1 << vertices.len()) {
            let face: Vec<String> = vertices
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, v)| v.clone())
                .collect();
            faces.insert((face.len(), face));
        }
    }
    let faces: Vec<Vec<String>> = faces.into_iter().map(|(_, f)| f).collect();
    let names: Vec<String> = faces.iter().map(|f| face_name(f)).collect();
    let mut pairs = Vec::new();
    for (i, f) in faces.iter().enumerate() {
        for (j, g) in faces.iter().enumerate() {
            if i != j && f.iter().all(|v| g.binary_search(v).is_ok()) {
                pairs.push((names[i].clone(), names[j].clone()));
            }
        }
    }
    let poset = Poset::new(Proset::from_relation(&names, &pairs, true)?)?;
    let space = poset.alexandrov_space();
    Ok(FaceModel {
        poset,
        space,
        faces,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::is_stratification;

    #[test]
    fn one_edge() {
        let m = face_poset_model(&[vec!["v0", "v1"]]).unwrap();
        assert_eq!(m.poset.len(), 3);
        assert_eq!(
            m.poset.cover_names(),
            vec![
                ("{v0}".to_owned(), "{v0,v1}".to_owned()),
                ("{v1}".to_owned(), "{v0,v1}".to_owned())
            ]
        );
    }

    #[test]
    fn triangle_boundary_skeleton_is_stratification() {
        let m = face_poset_model(&[vec!["a", "b"], vec!["b", "c"], vec!["a", "c"]]).unwrap();
        assert_eq!(m.poset.len(), 6);
        let d = m.skeleton_decomposition().unwrap();
        assert_eq!(d.stratum_count(), 2);
        assert!(is_stratification(&d).unwrap().is_stratification());
    }

    #[test]
    fn single_vertex() {
        let m = face_poset_model(&[vec!["v"]]).unwrap();
        assert_eq!(m.space.len(), 1);
    }

    #[test]
    fn empty_facet_rejected() {
        let facets: Vec<Vec<&str>> = vec![vec![]];
        assert_eq!(face_poset_model(&facets).unwrap_err(), Error::EmptyFacet);
    }
}
