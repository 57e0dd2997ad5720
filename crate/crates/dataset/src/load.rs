//! CSV loading with per-file schema checks and cross-file validation.
//!
//! Every error carries the file and line it was detected on. Team names in
//! the record files may be any alias from the team table; they are resolved
//! to canonical ids during loading.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use crate::model::{
    BoxScore, ChampionScoringRecord, Dataset, FinalFourRecord, FinalGame, FinalSide, Fork,
    PerformanceLabel, Region, SeasonId, TeamInfo, TopScorerRecord,
};
use crate::{DatasetError, Result};

pub const TEAMS_FILE: &str = "teams.csv";
pub const FINAL_FOURS_FILE: &str = "final_fours.csv";
pub const FINAL_GAMES_FILE: &str = "final_games.csv";
pub const CHAMPION_SCORING_FILE: &str = "champion_scoring.csv";
pub const TOP_SCORERS_FILE: &str = "top_scorers.csv";

/// Load and validate all five tables from `dir`.
pub fn load_dataset(dir: &Path) -> Result<Dataset> {
    let (teams, alias_to_canonical) = load_teams(dir)?;
    let (final_fours, season_lines) = load_final_fours(dir, &alias_to_canonical)?;

    let mut season_index: BTreeMap<(i32, Fork), &FinalFourRecord> = BTreeMap::new();
    for record in &final_fours {
        season_index.insert(record.season.key(), record);
    }

    let final_games = load_final_games(dir, &alias_to_canonical, &season_index, &season_lines)?;
    let champion_scoring = load_champion_scoring(dir, &season_index, &season_lines)?;
    let top_scorers = load_top_scorers(dir, &alias_to_canonical, &season_index)?;

    Ok(Dataset {
        teams,
        alias_to_canonical,
        final_fours,
        final_games,
        champion_scoring,
        top_scorers,
    })
}

fn read_rows(
    dir: &Path,
    file: &'static str,
    expected_header: &[&str],
) -> Result<Vec<(u64, csv::StringRecord)>> {
    let path = dir.join(file);
    let mut reader = csv::Reader::from_path(&path).map_err(|err| DatasetError::Io {
        path: path.display().to_string(),
        message: err.to_string(),
    })?;
    let headers = reader
        .headers()
        .map_err(|err| DatasetError::Io {
            path: path.display().to_string(),
            message: err.to_string(),
        })?
        .clone();
    let found: Vec<&str> = headers.iter().collect();
    if found != expected_header {
        return Err(DatasetError::Parse {
            file: file.to_string(),
            line: 1,
            message: format!(
                "expected columns {}, found {}",
                expected_header.join(","),
                found.join(",")
            ),
        });
    }
    let mut rows = Vec::new();
    for result in reader.records() {
        let record = result.map_err(|err| DatasetError::Parse {
            file: file.to_string(),
            line: err.position().map_or(0, csv::Position::line),
            message: err.to_string(),
        })?;
        let line = record.position().map_or(0, csv::Position::line);
        rows.push((line, record));
    }
    Ok(rows)
}

fn parse_error(file: &str, line: u64, message: String) -> DatasetError {
    DatasetError::Parse {
        file: file.to_string(),
        line,
        message,
    }
}

fn invariant_error(file: &str, line: u64, message: String) -> DatasetError {
    DatasetError::Invariant {
        file: file.to_string(),
        line,
        message,
    }
}

fn nonempty(file: &str, line: u64, name: &str, raw: &str) -> Result<String> {
    if raw.is_empty() {
        Err(parse_error(file, line, format!("{name} must not be empty")))
    } else {
        Ok(raw.to_string())
    }
}

fn parse_i32(file: &str, line: u64, name: &str, raw: &str) -> Result<i32> {
    raw.parse().map_err(|_| {
        parse_error(
            file,
            line,
            format!("{name} must be an integer, found '{raw}'"),
        )
    })
}

fn parse_u32(file: &str, line: u64, name: &str, raw: &str) -> Result<u32> {
    raw.parse().map_err(|_| {
        parse_error(
            file,
            line,
            format!("{name} must be a non-negative integer, found '{raw}'"),
        )
    })
}

fn parse_opt_u32(file: &str, line: u64, name: &str, raw: &str) -> Result<Option<u32>> {
    if raw.is_empty() {
        Ok(None)
    } else {
        parse_u32(file, line, name, raw).map(Some)
    }
}

fn parse_f64(file: &str, line: u64, name: &str, raw: &str) -> Result<f64> {
    let value: f64 = raw.parse().map_err(|_| {
        parse_error(file, line, format!("{name} must be a number, found '{raw}'"))
    })?;
    if value.is_finite() {
        Ok(value)
    } else {
        Err(parse_error(file, line, format!("{name} must be finite")))
    }
}

fn parse_fork(file: &str, line: u64, raw: &str) -> Result<Fork> {
    Fork::parse(raw).ok_or_else(|| parse_error(file, line, format!("unknown fork '{raw}'")))
}

fn resolve_team(
    aliases: &BTreeMap<String, String>,
    file: &str,
    line: u64,
    name: &str,
) -> Result<String> {
    aliases
        .get(name)
        .cloned()
        .ok_or_else(|| DatasetError::UnknownTeam {
            file: file.to_string(),
            line,
            name: name.to_string(),
        })
}

fn load_teams(dir: &Path) -> Result<(BTreeMap<String, TeamInfo>, BTreeMap<String, String>)> {
    let file = TEAMS_FILE;
    let rows = read_rows(dir, file, &["canonical_id", "alias", "country", "region"])?;
    let mut teams: BTreeMap<String, TeamInfo> = BTreeMap::new();
    let mut aliases: BTreeMap<String, String> = BTreeMap::new();
    let mut country_region: BTreeMap<String, Region> = BTreeMap::new();
    for (line, record) in &rows {
        let line = *line;
        let canonical = nonempty(file, line, "canonical_id", &record[0])?;
        let alias = nonempty(file, line, "alias", &record[1])?;
        let country = nonempty(file, line, "country", &record[2])?;
        let region = Region::parse(&record[3])
            .ok_or_else(|| parse_error(file, line, format!("unknown region '{}'", &record[3])))?;

        if aliases.insert(alias.clone(), canonical.clone()).is_some() {
            return Err(invariant_error(
                file,
                line,
                format!("alias '{alias}' is listed more than once"),
            ));
        }
        if let Some(existing) = country_region.insert(country.clone(), region) {
            if existing != region {
                return Err(invariant_error(
                    file,
                    line,
                    format!("country '{country}' is assigned to two regions"),
                ));
            }
        }
        match teams.get_mut(&canonical) {
            Some(info) => {
                if info.country != country || info.region != region {
                    return Err(invariant_error(
                        file,
                        line,
                        format!("team '{canonical}' is listed with conflicting country or region"),
                    ));
                }
                info.display_names.push(alias);
            }
            None => {
                teams.insert(
                    canonical.clone(),
                    TeamInfo {
                        canonical_id: canonical,
                        display_names: vec![alias],
                        country,
                        region,
                    },
                );
            }
        }
    }
    Ok((teams, aliases))
}

type SeasonLines = BTreeMap<(i32, Fork), u64>;

fn load_final_fours(
    dir: &Path,
    aliases: &BTreeMap<String, String>,
) -> Result<(Vec<FinalFourRecord>, SeasonLines)> {
    let file = FINAL_FOURS_FILE;
    let rows = read_rows(
        dir,
        file,
        &[
            "season_label",
            "ordinal",
            "fork",
            "winner",
            "runner_up",
            "third",
            "fourth",
        ],
    )?;
    let mut records = Vec::new();
    let mut season_lines: SeasonLines = BTreeMap::new();
    for (line, record) in &rows {
        let line = *line;
        let label = nonempty(file, line, "season_label", &record[0])?;
        let ordinal = parse_i32(file, line, "ordinal", &record[1])?;
        let fork = parse_fork(file, line, &record[2])?;
        let mut placed: [String; 4] = Default::default();
        for (slot, name) in placed.iter_mut().zip(record.iter().skip(3)) {
            *slot = resolve_team(aliases, file, line, name)?;
        }
        let distinct: BTreeSet<&String> = placed.iter().collect();
        if distinct.len() != 4 {
            return Err(invariant_error(
                file,
                line,
                format!("final four teams for season '{label}' are not distinct"),
            ));
        }
        let season = SeasonId {
            label: label.clone(),
            ordinal,
            fork,
        };
        if season_lines.insert(season.key(), line).is_some() {
            return Err(invariant_error(
                file,
                line,
                format!("season '{label}' appears more than once"),
            ));
        }
        records.push(FinalFourRecord { season, placed });
    }
    records.sort_by(|a, b| a.season.key().cmp(&b.season.key()));
    Ok((records, season_lines))
}

struct GameRow {
    line: u64,
    team: String,
    team_name: String,
    points: u32,
    top_scorer_points: u32,
    box_score: Option<BoxScore>,
    source: String,
}

fn load_final_games(
    dir: &Path,
    aliases: &BTreeMap<String, String>,
    seasons: &BTreeMap<(i32, Fork), &FinalFourRecord>,
    season_lines: &SeasonLines,
) -> Result<Vec<FinalGame>> {
    let file = FINAL_GAMES_FILE;
    let rows = read_rows(
        dir,
        file,
        &[
            "season_label",
            "ordinal",
            "fork",
            "leg",
            "team",
            "points",
            "top_scorer_points",
            "fga",
            "fgm",
            "fta",
            "ftm",
            "oreb",
            "dreb",
            "to",
            "source",
        ],
    )?;

    let mut grouped: BTreeMap<(i32, Fork, u32), Vec<GameRow>> = BTreeMap::new();
    for (line, record) in &rows {
        let line = *line;
        let label = nonempty(file, line, "season_label", &record[0])?;
        let ordinal = parse_i32(file, line, "ordinal", &record[1])?;
        let fork = parse_fork(file, line, &record[2])?;
        let leg = parse_u32(file, line, "leg", &record[3])?;
        if leg == 0 {
            return Err(parse_error(file, line, "leg must be positive".to_string()));
        }
        let team_name = nonempty(file, line, "team", &record[4])?;
        let team = resolve_team(aliases, file, line, &team_name)?;
        let points = parse_u32(file, line, "points", &record[5])?;
        let top_scorer_points = parse_u32(file, line, "top_scorer_points", &record[6])?;
        if points == 0 {
            return Err(invariant_error(
                file,
                line,
                format!("'{team_name}' is recorded with zero points"),
            ));
        }
        if top_scorer_points > points {
            return Err(invariant_error(
                file,
                line,
                format!("top scorer of '{team_name}' outscores the team"),
            ));
        }

        let record_key = seasons.get(&(ordinal, fork)).ok_or_else(|| {
            invariant_error(
                file,
                line,
                format!("no final four recorded for season '{label}'"),
            )
        })?;
        if record_key.season.label != label {
            return Err(invariant_error(
                file,
                line,
                format!(
                    "season label '{label}' disagrees with {FINAL_FOURS_FILE} ('{}')",
                    record_key.season.label
                ),
            ));
        }

        let box_fields = [
            parse_opt_u32(file, line, "fga", &record[7])?,
            parse_opt_u32(file, line, "fgm", &record[8])?,
            parse_opt_u32(file, line, "fta", &record[9])?,
            parse_opt_u32(file, line, "ftm", &record[10])?,
            parse_opt_u32(file, line, "oreb", &record[11])?,
            parse_opt_u32(file, line, "dreb", &record[12])?,
            parse_opt_u32(file, line, "to", &record[13])?,
        ];
        let present = box_fields.iter().filter(|f| f.is_some()).count();
        let box_score = match present {
            0 => None,
            7 => {
                let values: Vec<u32> = box_fields.iter().map(|f| f.unwrap()).collect();
                let score = BoxScore {
                    fga: values[0],
                    fgm: values[1],
                    fta: values[2],
                    ftm: values[3],
                    oreb: values[4],
                    dreb: values[5],
                    turnovers: values[6],
                };
                if score.fgm > score.fga {
                    return Err(invariant_error(
                        file,
                        line,
                        format!("'{team_name}' has more field goals made than attempted"),
                    ));
                }
                if score.ftm > score.fta {
                    return Err(invariant_error(
                        file,
                        line,
                        format!("'{team_name}' has more free throws made than attempted"),
                    ));
                }
                let minimum = 2 * score.fgm + score.ftm;
                let maximum = 3 * score.fgm + score.ftm;
                if points < minimum || points > maximum {
                    return Err(invariant_error(
                        file,
                        line,
                        format!(
                            "'{team_name}' points {points} are outside the range implied by \
                             made shots ({minimum} to {maximum})"
                        ),
                    ));
                }
                Some(score)
            }
            _ => {
                return Err(invariant_error(
                    file,
                    line,
                    format!("box score for '{team_name}' must be complete or wholly absent"),
                ));
            }
        };

        let source = nonempty(file, line, "source", &record[14])?;
        grouped.entry((ordinal, fork, leg)).or_default().push(GameRow {
            line,
            team,
            team_name,
            points,
            top_scorer_points,
            box_score,
            source,
        });
    }

    let mut games = Vec::new();
    let mut legs_by_season: BTreeMap<(i32, Fork), Vec<u32>> = BTreeMap::new();
    for ((ordinal, fork, leg), mut sides) in grouped {
        let record = seasons[&(ordinal, fork)];
        let label = &record.season.label;
        if sides.len() != 2 {
            return Err(invariant_error(
                file,
                sides[0].line,
                format!(
                    "final for season '{label}' leg {leg} needs exactly two team rows, found {}",
                    sides.len()
                ),
            ));
        }
        let second = sides.pop().unwrap();
        let first = sides.pop().unwrap();
        let (champion_row, runner_row) =
            if first.team == record.winner() && second.team == record.runner_up() {
                (first, second)
            } else if second.team == record.winner() && first.team == record.runner_up() {
                (second, first)
            } else {
                return Err(invariant_error(
                    file,
                    first.line,
                    format!(
                        "final for season '{label}' does not match the recorded winner \
                         and runner-up"
                    ),
                ));
            };
        legs_by_season.entry((ordinal, fork)).or_default().push(leg);
        let source = champion_row.source.clone();
        games.push(FinalGame {
            season: record.season.clone(),
            leg,
            champion: FinalSide {
                team: champion_row.team,
                team_name: champion_row.team_name,
                points: champion_row.points,
                top_scorer_points: champion_row.top_scorer_points,
                box_score: champion_row.box_score,
            },
            runner_up: FinalSide {
                team: runner_row.team,
                team_name: runner_row.team_name,
                points: runner_row.points,
                top_scorer_points: runner_row.top_scorer_points,
                box_score: runner_row.box_score,
            },
            source,
        });
    }

    for (key, legs) in &legs_by_season {
        let expected: Vec<u32> = (1..=legs.len() as u32).collect();
        if *legs != expected {
            let record = seasons[key];
            return Err(invariant_error(
                file,
                season_lines[key],
                format!(
                    "final legs for season '{}' must be numbered consecutively from one",
                    record.season.label
                ),
            ));
        }
    }

    for (key, record) in seasons {
        let Some(_) = legs_by_season.get(key) else {
            return Err(invariant_error(
                FINAL_FOURS_FILE,
                season_lines[key],
                format!(
                    "season '{}' has no championship final in {FINAL_GAMES_FILE}",
                    record.season.label
                ),
            ));
        };
        let mut champion_total: u64 = 0;
        let mut runner_total: u64 = 0;
        for game in games.iter().filter(|g| g.season.key() == *key) {
            champion_total += u64::from(game.champion.points);
            runner_total += u64::from(game.runner_up.points);
        }
        if champion_total <= runner_total {
            return Err(invariant_error(
                file,
                season_lines[key],
                format!(
                    "champion of season '{}' did not win on aggregate ({champion_total} \
                     to {runner_total})",
                    record.season.label
                ),
            ));
        }
    }

    games.sort_by_key(|g| (g.season.key(), g.leg));
    Ok(games)
}

fn load_champion_scoring(
    dir: &Path,
    seasons: &BTreeMap<(i32, Fork), &FinalFourRecord>,
    season_lines: &SeasonLines,
) -> Result<Vec<ChampionScoringRecord>> {
    let file = CHAMPION_SCORING_FILE;
    let rows = read_rows(
        dir,
        file,
        &[
            "season_label",
            "ordinal",
            "fork",
            "champ_ppg",
            "opp_ppg",
            "source",
        ],
    )?;
    let mut records = Vec::new();
    let mut seen: BTreeSet<(i32, Fork)> = BTreeSet::new();
    for (line, record) in &rows {
        let line = *line;
        let label = nonempty(file, line, "season_label", &record[0])?;
        let ordinal = parse_i32(file, line, "ordinal", &record[1])?;
        let fork = parse_fork(file, line, &record[2])?;
        let champion_ppg = parse_f64(file, line, "champ_ppg", &record[3])?;
        let opponent_ppg = parse_f64(file, line, "opp_ppg", &record[4])?;
        let source = nonempty(file, line, "source", &record[5])?;
        if champion_ppg <= 0.0 || opponent_ppg <= 0.0 {
            return Err(invariant_error(
                file,
                line,
                format!("scoring averages for season '{label}' must be positive"),
            ));
        }
        let ff = seasons.get(&(ordinal, fork)).ok_or_else(|| {
            invariant_error(
                file,
                line,
                format!("no final four recorded for season '{label}'"),
            )
        })?;
        if ff.season.label != label {
            return Err(invariant_error(
                file,
                line,
                format!(
                    "season label '{label}' disagrees with {FINAL_FOURS_FILE} ('{}')",
                    ff.season.label
                ),
            ));
        }
        if !seen.insert((ordinal, fork)) {
            return Err(invariant_error(
                file,
                line,
                format!("season '{label}' is listed twice"),
            ));
        }
        records.push(ChampionScoringRecord {
            season: ff.season.clone(),
            champion_ppg,
            opponent_ppg,
            source,
        });
    }
    for (key, record) in seasons {
        if !seen.contains(key) {
            return Err(invariant_error(
                FINAL_FOURS_FILE,
                season_lines[key],
                format!(
                    "season '{}' is missing from {CHAMPION_SCORING_FILE}",
                    record.season.label
                ),
            ));
        }
    }
    records.sort_by(|a, b| a.season.key().cmp(&b.season.key()));
    Ok(records)
}

fn load_top_scorers(
    dir: &Path,
    aliases: &BTreeMap<String, String>,
    seasons: &BTreeMap<(i32, Fork), &FinalFourRecord>,
) -> Result<Vec<TopScorerRecord>> {
    let file = TOP_SCORERS_FILE;
    let rows = read_rows(
        dir,
        file,
        &[
            "season_label",
            "ordinal",
            "fork",
            "player",
            "ppg",
            "team",
            "performance_label",
        ],
    )?;
    let mut records = Vec::new();
    let mut seen: BTreeSet<(i32, Fork)> = BTreeSet::new();
    for (line, record) in &rows {
        let line = *line;
        let label = nonempty(file, line, "season_label", &record[0])?;
        let ordinal = parse_i32(file, line, "ordinal", &record[1])?;
        let fork = parse_fork(file, line, &record[2])?;
        let player = nonempty(file, line, "player", &record[3])?;
        let ppg = parse_f64(file, line, "ppg", &record[4])?;
        let team_name = nonempty(file, line, "team", &record[5])?;
        let team = resolve_team(aliases, file, line, &team_name)?;
        let performance_label = PerformanceLabel::parse(&record[6]).ok_or_else(|| {
            parse_error(
                file,
                line,
                format!("unknown performance label '{}'", &record[6]),
            )
        })?;
        if ppg <= 0.0 {
            return Err(invariant_error(
                file,
                line,
                format!("scoring average for '{player}' must be positive"),
            ));
        }
        let ff = seasons.get(&(ordinal, fork)).ok_or_else(|| {
            invariant_error(
                file,
                line,
                format!("no final four recorded for season '{label}'"),
            )
        })?;
        if ff.season.label != label {
            return Err(invariant_error(
                file,
                line,
                format!(
                    "season label '{label}' disagrees with {FINAL_FOURS_FILE} ('{}')",
                    ff.season.label
                ),
            ));
        }
        let consistent = match performance_label {
            PerformanceLabel::Winner => team == ff.winner(),
            PerformanceLabel::RunnerUp => team == ff.runner_up(),
            PerformanceLabel::FinalFour => team == ff.third() || team == ff.fourth(),
            _ => !ff.placed.contains(&team),
        };
        if !consistent {
            return Err(invariant_error(
                file,
                line,
                format!(
                    "performance label '{}' for '{player}' contradicts the season '{label}' \
                     placements",
                    performance_label.as_str()
                ),
            ));
        }
        if !seen.insert((ordinal, fork)) {
            return Err(invariant_error(
                file,
                line,
                format!("season '{label}' is listed twice"),
            ));
        }
        records.push(TopScorerRecord {
            season: ff.season.clone(),
            player,
            ppg,
            team,
            team_name,
            performance_label,
        });
    }
    records.sort_by(|a, b| a.season.key().cmp(&b.season.key()));
    Ok(records)
}
