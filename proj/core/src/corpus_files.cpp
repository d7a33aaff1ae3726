#include "mss/corpus_files.hpp"

#include <stdexcept>

namespace mss {

namespace fs = std::filesystem;

fs::path default_data_dir() {
    fs::path source(MSS_SOURCE_DATA_DIR);
    if (fs::exists(source / kIncidentsFile)) {
        return source;
    }
    return fs::path(MSS_INSTALL_DATA_DIR);
}

CorpusBundle load_corpus(const fs::path& path) {
    CorpusBundle bundle;
    if (fs::is_directory(path)) {
        bundle.incidents_path = path / kIncidentsFile;
    } else {
        bundle.incidents_path = path;
    }
    if (!fs::exists(bundle.incidents_path)) {
        throw std::runtime_error("corpus not found: " + bundle.incidents_path.string());
    }
    bundle.timeline_path = bundle.incidents_path.parent_path() / kTimelineFile;
    if (!fs::exists(bundle.timeline_path)) {
        bundle.timeline_path = default_data_dir() / kTimelineFile;
    }
    bundle.incidents = load_incidents(bundle.incidents_path);
    bundle.timeline_rows = parse_published_timeline(read_text_file(bundle.timeline_path));
    return bundle;
}

} // namespace mss
