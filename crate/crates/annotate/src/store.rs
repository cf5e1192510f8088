//! Durable task storage. Each task lives in `<task_id>.json` next to an
//! append-only `<task_id>.log.jsonl`. Every append is flushed to disk before
//! it is acknowledged, and replaying the log on open rebuilds the in-memory
//! view with the latest record per logical key.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fs::{self, File, OpenOptions};
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use chrono::Utc;
use log::warn;
use serde::{Deserialize, Serialize};
use splitqa_core::analysis::{EditCategory, SampledPair};
use thiserror::Error;

use crate::model::{AnnotationTask, EditLabelRecord, LogEntry, Metric, RatingRecord, TaskKind};
use crate::report::{build_report, Report};

#[derive(Debug, Error)]
pub enum StoreError {
    #[error("unknown task `{0}`")]
    UnknownTask(String),
    #[error("task `{task_id}` has no pair `{pair_id}`")]
    UnknownPair { task_id: String, pair_id: String },
    #[error("task `{task_id}` is a {kind} task")]
    WrongKind { task_id: String, kind: TaskKind },
    #[error("{0}")]
    Invalid(String),
    #[error("{}: {source}", .path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("{}:{line}: {message}", .path.display())]
    Corrupt { path: PathBuf, line: usize, message: String },
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> StoreError + '_ {
    move |source| StoreError::Io {
        path: path.to_path_buf(),
        source,
    }
}

#[derive(Debug, Clone, Deserialize)]
pub struct RatingSubmission {
    pub rater_id: String,
    pub pair_id: String,
    pub metric: String,
    pub score: i64,
}

#[derive(Debug, Clone, Deserialize)]
pub struct EditLabelSubmission {
    pub rater_id: String,
    pub pair_id: String,
    pub category: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum NextItem {
    Item {
        done: bool,
        index: usize,
        pair: SampledPair,
        /// Pairs this rater has not finished, the returned one included.
        remaining: usize,
        /// Responses still owed for this pair.
        pending: Vec<String>,
    },
    Done { done: bool, remaining: usize },
}

impl NextItem {
    pub fn index(&self) -> Option<usize> {
        match self {
            NextItem::Item { index, .. } => Some(*index),
            NextItem::Done { .. } => None,
        }
    }
}

type RatingKey = (String, String, Metric);
type LabelKey = (String, String);

struct TaskState {
    task: AnnotationTask,
    ratings: BTreeMap<RatingKey, RatingRecord>,
    labels: BTreeMap<LabelKey, EditLabelRecord>,
    log_path: PathBuf,
    log: File,
}

impl TaskState {
    fn apply(&mut self, entry: LogEntry) {
        match entry {
            LogEntry::Rating(r) => {
                self.ratings.insert((r.rater_id.clone(), r.pair_id.clone(), r.metric), r);
            }
            LogEntry::EditLabel(l) => {
                self.labels.insert((l.rater_id.clone(), l.pair_id.clone()), l);
            }
        }
    }

    fn append(&mut self, entry: &LogEntry) -> Result<(), StoreError> {
        let mut line = serde_json::to_vec(entry).expect("log entry serializes");
        line.push(b'\n');
        self.log.write_all(&line).map_err(io_err(&self.log_path))?;
        self.log.sync_data().map_err(io_err(&self.log_path))
    }

    fn pending(&self, rater: &str, pair_id: &str) -> Vec<String> {
        match self.task.kind {
            TaskKind::QualityRating => Metric::ALL
                .iter()
                .filter(|&&m| !self.ratings.contains_key(&(rater.to_string(), pair_id.to_string(), m)))
                .map(|m| m.as_str().to_string())
                .collect(),
            TaskKind::EditClassification => {
                if self.labels.contains_key(&(rater.to_string(), pair_id.to_string())) {
                    Vec::new()
                } else {
                    vec!["category".to_string()]
                }
            }
        }
    }

    fn check_pair(&self, pair_id: &str) -> Result<(), StoreError> {
        match self.task.pair_index(pair_id) {
            Some(_) => Ok(()),
            None => Err(StoreError::UnknownPair {
                task_id: self.task.task_id.clone(),
                pair_id: pair_id.to_string(),
            }),
        }
    }

    fn check_kind(&self, kind: TaskKind) -> Result<(), StoreError> {
        if self.task.kind == kind {
            Ok(())
        } else {
            Err(StoreError::WrongKind {
                task_id: self.task.task_id.clone(),
                kind: self.task.kind,
            })
        }
    }
}

/// All tasks under one data directory. A single lock serializes writers, so
/// appends are linearizable and a read sees every acknowledged append.
pub struct Store {
    dir: PathBuf,
    tasks: Mutex<HashMap<String, TaskState>>,
}

fn task_path(dir: &Path, task_id: &str) -> PathBuf {
    dir.join(format!("{task_id}.json"))
}

fn log_path(dir: &Path, task_id: &str) -> PathBuf {
    dir.join(format!("{task_id}.log.jsonl"))
}

fn open_log(path: &Path) -> Result<File, StoreError> {
    OpenOptions::new().create(true).append(true).open(path).map_err(io_err(path))
}

/// Parses every complete line. A trailing fragment without its newline was
/// never acknowledged, so it is dropped and cut from the file.
fn replay_log(path: &Path) -> Result<Vec<LogEntry>, StoreError> {
    let bytes = match fs::read(path) {
        Ok(bytes) => bytes,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(Vec::new()),
        Err(e) => return Err(io_err(path)(e)),
    };
    let complete = bytes.iter().rposition(|&b| b == b'\n').map_or(0, |i| i + 1);
    if complete < bytes.len() {
        warn!(
            "{}: dropping {} bytes of an unfinished append",
            path.display(),
            bytes.len() - complete
        );
        let file = OpenOptions::new().write(true).open(path).map_err(io_err(path))?;
        file.set_len(complete as u64).map_err(io_err(path))?;
        file.sync_all().map_err(io_err(path))?;
    }
    let mut entries = Vec::new();
    for (i, line) in bytes[..complete].split(|&b| b == b'\n').enumerate() {
        if line.iter().all(u8::is_ascii_whitespace) {
            continue;
        }
        let entry = serde_json::from_slice(line).map_err(|e| StoreError::Corrupt {
            path: path.to_path_buf(),
            line: i + 1,
            message: e.to_string(),
        })?;
        entries.push(entry);
    }
    Ok(entries)
}

impl Store {
    /// Opens (creating if needed) a data directory and replays every task.
    pub fn open(dir: impl Into<PathBuf>) -> Result<Store, StoreError> {
        let dir = dir.into();
        fs::create_dir_all(&dir).map_err(io_err(&dir))?;
        let mut tasks = HashMap::new();
        for entry in fs::read_dir(&dir).map_err(io_err(&dir))? {
            let path = entry.map_err(io_err(&dir))?.path();
            if path.extension().is_none_or(|e| e != "json") {
                continue;
            }
            let raw = fs::read(&path).map_err(io_err(&path))?;
            let task: AnnotationTask = serde_json::from_slice(&raw).map_err(|e| StoreError::Corrupt {
                path: path.clone(),
                line: e.line(),
                message: e.to_string(),
            })?;
            let log_path = log_path(&dir, &task.task_id);
            let entries = replay_log(&log_path)?;
            let mut state = TaskState {
                log: open_log(&log_path)?,
                log_path,
                task,
                ratings: BTreeMap::new(),
                labels: BTreeMap::new(),
            };
            for entry in entries {
                state.apply(entry);
            }
            tasks.insert(state.task.task_id.clone(), state);
        }
        Ok(Store {
            dir,
            tasks: Mutex::new(tasks),
        })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn lock(&self) -> std::sync::MutexGuard<'_, HashMap<String, TaskState>> {
        // A panic while holding the lock cannot leave a half-applied entry:
        // the map is only updated after the append succeeded.
        self.tasks.lock().unwrap_or_else(|poisoned| poisoned.into_inner())
    }

    fn with_task<T>(
        &self,
        task_id: &str,
        f: impl FnOnce(&mut TaskState) -> Result<T, StoreError>,
    ) -> Result<T, StoreError> {
        let mut tasks = self.lock();
        let state = tasks
            .get_mut(task_id)
            .ok_or_else(|| StoreError::UnknownTask(task_id.to_string()))?;
        f(state)
    }

    /// Persists a task. Returns the task and whether it was newly created;
    /// identical (kind, pairs) input maps to the existing task.
    pub fn create_task(&self, kind: TaskKind, pairs: Vec<SampledPair>) -> Result<(AnnotationTask, bool), StoreError> {
        if pairs.is_empty() {
            return Err(StoreError::Invalid("a task needs at least one pair".into()));
        }
        let mut seen = HashSet::new();
        for pair in &pairs {
            if pair.pair_id.trim().is_empty() {
                return Err(StoreError::Invalid("pair_id must not be empty".into()));
            }
            if !seen.insert(pair.pair_id.as_str()) {
                return Err(StoreError::Invalid(format!("duplicate pair_id `{}`", pair.pair_id)));
            }
        }
        let task = AnnotationTask::new(kind, pairs);
        let mut tasks = self.lock();
        if let Some(existing) = tasks.get(&task.task_id) {
            return Ok((existing.task.clone(), false));
        }
        let path = task_path(&self.dir, &task.task_id);
        let tmp = path.with_extension("json.tmp");
        {
            let mut file = File::create(&tmp).map_err(io_err(&tmp))?;
            let mut body = serde_json::to_vec_pretty(&task).expect("task serializes");
            body.push(b'\n');
            file.write_all(&body).map_err(io_err(&tmp))?;
            file.sync_all().map_err(io_err(&tmp))?;
        }
        fs::rename(&tmp, &path).map_err(io_err(&path))?;
        let log_path = log_path(&self.dir, &task.task_id);
        let log = open_log(&log_path)?;
        if let Ok(dir) = File::open(&self.dir) {
            // Makes the new directory entries durable where supported.
            let _ = dir.sync_all();
        }
        tasks.insert(
            task.task_id.clone(),
            TaskState {
                task: task.clone(),
                ratings: BTreeMap::new(),
                labels: BTreeMap::new(),
                log_path,
                log,
            },
        );
        Ok((task, true))
    }

    pub fn task(&self, task_id: &str) -> Result<AnnotationTask, StoreError> {
        self.with_task(task_id, |s| Ok(s.task.clone()))
    }

    pub fn task_ids(&self) -> Vec<String> {
        let mut ids: Vec<String> = self.lock().keys().cloned().collect();
        ids.sort();
        ids
    }

    /// The lowest-index pair this rater has not finished.
    pub fn next_item(&self, task_id: &str, rater_id: &str) -> Result<NextItem, StoreError> {
        if rater_id.trim().is_empty() {
            return Err(StoreError::Invalid("rater id must not be empty".into()));
        }
        self.with_task(task_id, |state| {
            let open: Vec<(usize, Vec<String>)> = state
                .task
                .pairs
                .iter()
                .enumerate()
                .map(|(i, p)| (i, state.pending(rater_id, &p.pair_id)))
                .filter(|(_, pending)| !pending.is_empty())
                .collect();
            Ok(match open.first() {
                Some((index, pending)) => NextItem::Item {
                    done: false,
                    index: *index,
                    pair: state.task.pairs[*index].clone(),
                    remaining: open.len(),
                    pending: pending.clone(),
                },
                None => NextItem::Done {
                    done: true,
                    remaining: 0,
                },
            })
        })
    }

    pub fn submit_rating(&self, task_id: &str, submission: RatingSubmission) -> Result<RatingRecord, StoreError> {
        let metric: Metric = submission.metric.parse().map_err(StoreError::Invalid)?;
        if !(1..=5).contains(&submission.score) {
            return Err(StoreError::Invalid(format!(
                "score must be an integer from 1 to 5, got {}",
                submission.score
            )));
        }
        check_rater(&submission.rater_id)?;
        self.with_task(task_id, |state| {
            state.check_kind(TaskKind::QualityRating)?;
            state.check_pair(&submission.pair_id)?;
            let record = RatingRecord {
                rater_id: submission.rater_id,
                pair_id: submission.pair_id,
                metric,
                score: submission.score as u8,
                timestamp: Utc::now(),
            };
            let entry = LogEntry::Rating(record.clone());
            state.append(&entry)?;
            state.apply(entry);
            Ok(record)
        })
    }

    pub fn submit_edit_label(
        &self,
        task_id: &str,
        submission: EditLabelSubmission,
    ) -> Result<EditLabelRecord, StoreError> {
        let category: EditCategory = submission
            .category
            .parse()
            .map_err(|e: splitqa_core::analysis::AnalysisError| StoreError::Invalid(e.to_string()))?;
        check_rater(&submission.rater_id)?;
        self.with_task(task_id, |state| {
            state.check_kind(TaskKind::EditClassification)?;
            state.check_pair(&submission.pair_id)?;
            let record = EditLabelRecord {
                rater_id: submission.rater_id,
                pair_id: submission.pair_id,
                category,
                timestamp: Utc::now(),
            };
            let entry = LogEntry::EditLabel(record.clone());
            state.append(&entry)?;
            state.apply(entry);
            Ok(record)
        })
    }

    /// Latest rating per (rater, pair, metric).
    pub fn ratings(&self, task_id: &str) -> Result<Vec<RatingRecord>, StoreError> {
        self.with_task(task_id, |s| Ok(s.ratings.values().cloned().collect()))
    }

    /// Latest label per (rater, pair).
    pub fn edit_labels(&self, task_id: &str) -> Result<Vec<EditLabelRecord>, StoreError> {
        self.with_task(task_id, |s| Ok(s.labels.values().cloned().collect()))
    }

    pub fn report(&self, task_id: &str) -> Result<Report, StoreError> {
        self.with_task(task_id, |s| {
            let ratings: Vec<&RatingRecord> = s.ratings.values().collect();
            let labels: Vec<&EditLabelRecord> = s.labels.values().collect();
            Ok(build_report(&s.task, &ratings, &labels))
        })
    }
}

fn check_rater(rater_id: &str) -> Result<(), StoreError> {
    if rater_id.trim().is_empty() {
        Err(StoreError::Invalid("rater_id must not be empty".into()))
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pairs(n: usize) -> Vec<SampledPair> {
        (0..n)
            .map(|i| SampledPair {
                pair_id: format!("c{i}#0"),
                original: format!("Sentence {i}, and more."),
                candidate: format!("Sentence {i}. More."),
            })
            .collect()
    }

    fn rating(rater: &str, pair: &str, metric: &str, score: i64) -> RatingSubmission {
        RatingSubmission {
            rater_id: rater.into(),
            pair_id: pair.into(),
            metric: metric.into(),
            score,
        }
    }

    #[test]
    fn next_item_follows_completeness() {
        let dir = tempfile::tempdir().unwrap();
        let store = Store::open(dir.path()).unwrap();
        let (task, created) = store.create_task(TaskKind::QualityRating, pairs(50)).unwrap();
        assert!(created);
        match store.next_item(&task.task_id, "r1").unwrap() {
            NextItem::Item { index, remaining, .. } => assert_eq!((index, remaining), (0, 50)),
            other => panic!("{other:?}"),
        }
        store.submit_rating(&task.task_id, rating("r1", "c0#0", "fluency", 4)).unwrap();
        store
            .submit_rating(&task.task_id, rating("r1", "c0#0", "content_preservation", 4))
            .unwrap();
        match store.next_item(&task.task_id, "r1").unwrap() {
            NextItem::Item { index, pending, .. } => {
                assert_eq!(index, 0);
                assert_eq!(pending, vec!["relative_simplicity"]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn validation_errors() {
        let dir = tempfile::tempdir().unwrap();
        let store = Store::open(dir.path()).unwrap();
        assert!(matches!(
            store.create_task(TaskKind::QualityRating, Vec::new()),
            Err(StoreError::Invalid(_))
        ));
        let mut dup = pairs(2);
        dup[1].pair_id = dup[0].pair_id.clone();
        assert!(store.create_task(TaskKind::QualityRating, dup).is_err());
        let (task, _) = store.create_task(TaskKind::QualityRating, pairs(2)).unwrap();
        let id = &task.task_id;
        for score in [0, 6, -1] {
            assert!(matches!(
                store.submit_rating(id, rating("r1", "c0#0", "fluency", score)),
                Err(StoreError::Invalid(_))
            ));
        }
        assert!(matches!(
            store.submit_rating(id, rating("r1", "nope", "fluency", 3)),
            Err(StoreError::UnknownPair { .. })
        ));
        assert!(matches!(
            store.submit_rating(id, rating("r1", "c0#0", "grammar", 3)),
            Err(StoreError::Invalid(_))
        ));
        assert!(matches!(
            store.submit_rating("missing", rating("r1", "c0#0", "fluency", 3)),
            Err(StoreError::UnknownTask(_))
        ));
        let label = EditLabelSubmission {
            rater_id: "r1".into(),
            pair_id: "c0#0".into(),
            category: "inter_event".into(),
        };
        assert!(matches!(store.submit_edit_label(id, label), Err(StoreError::WrongKind { .. })));
        assert!(store.ratings(id).unwrap().is_empty());
    }

    #[test]
    fn replay_drops_unfinished_tail() {
        let dir = tempfile::tempdir().unwrap();
        let id = {
            let store = Store::open(dir.path()).unwrap();
            let (task, _) = store.create_task(TaskKind::QualityRating, pairs(3)).unwrap();
            store.submit_rating(&task.task_id, rating("r1", "c0#0", "fluency", 2)).unwrap();
            store.submit_rating(&task.task_id, rating("r1", "c0#0", "fluency", 5)).unwrap();
            task.task_id
        };
        let log = log_path(dir.path(), &id);
        let mut file = OpenOptions::new().append(true).open(&log).unwrap();
        file.write_all(br#"{"type":"rating","rater_id":"r2","pa"#).unwrap();
        drop(file);

        let store = Store::open(dir.path()).unwrap();
        let ratings = store.ratings(&id).unwrap();
        assert_eq!(ratings.len(), 1);
        assert_eq!(ratings[0].score, 5);
        store.submit_rating(&id, rating("r2", "c1#0", "fluency", 3)).unwrap();
        drop(store);
        let store = Store::open(dir.path()).unwrap();
        assert_eq!(store.ratings(&id).unwrap().len(), 2);
    }

    #[test]
    fn corrupt_middle_line_is_an_error() {
        let dir = tempfile::tempdir().unwrap();
        let id = {
            let store = Store::open(dir.path()).unwrap();
            store.create_task(TaskKind::QualityRating, pairs(1)).unwrap().0.task_id
        };
        fs::write(log_path(dir.path(), &id), "not json\n").unwrap();
        assert!(matches!(Store::open(dir.path()), Err(StoreError::Corrupt { line: 1, .. })));
    }
}
