#pragma once

#include <filesystem>
#include <vector>

#include "mss/corpus.hpp"
#include "mss/timeline.hpp"

namespace mss {

inline constexpr const char* kIncidentsFile = "incidents.csv";
inline constexpr const char* kTimelineFile = "table4_published.csv";

struct CorpusBundle {
    std::filesystem::path incidents_path;
    std::filesystem::path timeline_path;
    std::vector<Incident> incidents;
    std::vector<PublishedTimelineRow> timeline_rows;
};

/// The bundled data directory: the source tree when it exists, otherwise the
/// install location.
std::filesystem::path default_data_dir();

/// `path` is a directory holding incidents.csv, or an incidents CSV file.
/// The timeline table is read from the same directory, falling back to the
/// bundled copy when absent.
CorpusBundle load_corpus(const std::filesystem::path& path);

} // namespace mss
