use super::Vertex;

/// Sorted set of distinct vertex ids.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct VertexSet {
    members: Vec<Vertex>,
}

impl VertexSet {
    pub fn new(members: impl IntoIterator<Item = Vertex>) -> Self {
        let mut members: Vec<Vertex> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        Self { members }
    }

    pub(crate) fn from_sorted_unchecked(members: Vec<Vertex>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        Self { members }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.members.iter().copied()
    }

    pub fn as_slice(&self) -> &[Vertex] {
        &self.members
    }

    pub fn intersection<'a>(&'a self, other: &'a VertexSet) -> impl Iterator<Item = Vertex> + 'a {
        self.iter().filter(move |&v| other.contains(v))
    }

    /// Largest member, if any.
    pub fn max(&self) -> Option<Vertex> {
        self.members.last().copied()
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        Self::new(iter)
    }
}

impl From<Vec<Vertex>> for VertexSet {
    fn from(v: Vec<Vertex>) -> Self {
        Self::new(v)
    }
}
