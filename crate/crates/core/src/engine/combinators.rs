use super::{Computation, Decider, Emit, Enumerator, Process, Selector, SemiDecider};

/// Accepts once every child has accepted. Children are stepped round-robin;
/// accepted children leave the rotation. An empty list accepts at once.
pub fn dovetail_and(children: Vec<SemiDecider>) -> SemiDecider {
    SemiDecider::new(And {
        live: children,
        cursor: 0,
    })
}

struct And {
    live: Vec<SemiDecider>,
    cursor: usize,
}

impl Process for And {
    type Output = ();

    fn step(&mut self) -> Option<()> {
        if self.live.is_empty() {
            return Some(());
        }
        if self.cursor >= self.live.len() {
            self.cursor = 0;
        }
        if self.live[self.cursor].advance().is_some() {
            self.live.remove(self.cursor);
        } else {
            self.cursor += 1;
        }
        self.live.is_empty().then_some(())
    }
}

/// Returns the index of the first child to accept. Children are stepped
/// round-robin in list order, so within a round the lower index wins.
pub fn race(children: Vec<SemiDecider>) -> Selector {
    Selector::new(Race {
        children,
        cursor: 0,
    })
}

struct Race {
    children: Vec<SemiDecider>,
    cursor: usize,
}

impl Process for Race {
    type Output = usize;

    fn step(&mut self) -> Option<usize> {
        if self.children.is_empty() {
            return None;
        }
        let i = self.cursor;
        self.cursor = (self.cursor + 1) % self.children.len();
        self.children[i].advance().map(|()| i)
    }
}

/// Accepts once any child accepts.
pub fn dovetail_or(children: Vec<SemiDecider>) -> SemiDecider {
    race(children).map(|_| ())
}

/// Runs deciders one after another: yes iff all say yes, stopping at the
/// first no. An empty list says yes at once.
pub fn sequence_all(deciders: Vec<Decider>) -> Decider {
    let mut queue: std::collections::VecDeque<Decider> = deciders.into();
    Decider::from_fn(move || match queue.front_mut() {
        None => Some(true),
        Some(d) => match d.advance() {
            Some(false) => Some(false),
            Some(true) => {
                queue.pop_front();
                queue.is_empty().then_some(true)
            }
            None => None,
        },
    })
}

type Family<T> = Box<dyn Fn(&T) -> SemiDecider + Send>;

/// Dovetails a semi-decider over every item of a domain stream: each round
/// pulls one domain step, then gives one step to every live child.
struct Dovetailer<T> {
    domain: Enumerator<T>,
    family: Family<T>,
    children: Vec<(T, SemiDecider)>,
    // 0 = the domain's turn, i >= 1 = child i - 1.
    position: usize,
}

impl<T: Send + 'static> Dovetailer<T> {
    fn new(domain: Enumerator<T>, family: Family<T>) -> Self {
        Dovetailer {
            domain,
            family,
            children: Vec::new(),
            position: 0,
        }
    }

    fn idle(&self) -> bool {
        self.children.is_empty() && self.domain.is_finished()
    }

    // One delegated step; returns the item whose child accepted, if any.
    fn step(&mut self) -> Option<T> {
        if self.idle() {
            return None;
        }
        loop {
            if self.position == 0 {
                self.position = 1;
                if !self.domain.is_finished() {
                    if let Some(item) = self.domain.step() {
                        let child = (self.family)(&item);
                        self.children.push((item, child));
                    }
                    return None;
                }
            }
            let i = self.position - 1;
            if i >= self.children.len() {
                self.position = 0;
                continue;
            }
            if self.children[i].1.advance().is_some() {
                let (item, _) = self.children.remove(i);
                return Some(item);
            }
            self.position += 1;
            return None;
        }
    }
}

/// Emits exactly the domain items whose semi-decider accepts, once each.
pub fn semidecider_to_enumerator<T, F>(family: F, domain: Enumerator<T>) -> Enumerator<T>
where
    T: Send + 'static,
    F: Fn(&T) -> SemiDecider + Send + 'static,
{
    Enumerator::new(Dovetailer::new(domain, Box::new(family)))
}

impl<T: Send + 'static> Emit<T> for Dovetailer<T> {
    fn step(&mut self) -> Option<T> {
        Dovetailer::step(self)
    }

    fn is_finished(&self) -> bool {
        self.idle()
    }
}

/// Terminates with the first domain item whose semi-decider accepts.
pub fn search<T, F>(family: F, domain: Enumerator<T>) -> Computation<T>
where
    T: Send + 'static,
    F: Fn(&T) -> SemiDecider + Send + 'static,
{
    Computation::new(Search(Dovetailer::new(domain, Box::new(family))))
}

/// Process behind [`search`].
pub struct Search<T>(Dovetailer<T>);

impl<T: Send + 'static> Process for Search<T> {
    type Output = T;

    fn step(&mut self) -> Option<T> {
        self.0.step()
    }
}
