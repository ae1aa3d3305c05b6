#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "cremona/classify.hpp"
#include "cremona/clutter.hpp"
#include "cremona/enumerate.hpp"
#include "cremona/error.hpp"
#include "cremona/symmetry.hpp"

namespace cremona {

struct RecordEntry {
    std::vector<Mask> edges;  // canonical form, ascending
    IncidenceSequence incidence;
    std::uint64_t stabilizer_order = 0;
    std::optional<StructuralType> type;  // only at (6,3)
    std::size_t dual_index = 0;          // position of the dual class in the (n, n-d) record

    friend bool operator==(const RecordEntry&, const RecordEntry&) = default;
};

struct CensusRecord {
    int n = 0;
    int d = 0;
    std::vector<RecordEntry> entries;

    friend bool operator==(const CensusRecord&, const CensusRecord&) = default;
};

namespace detail {

inline std::string to_hex(Mask m) {
    std::ostringstream os;
    os << std::hex << m;
    return os.str();
}

inline Mask from_hex(const std::string& s) {
    if (s.empty() || s.size() > 8 || s.find_first_not_of("0123456789abcdef") != std::string::npos)
        throw ParseError("bad hex mask '" + s + "'", 0);
    return static_cast<Mask>(std::stoul(s, nullptr, 16));
}

inline std::vector<Mask> dual_masks(int n, std::span<const Mask> masks) {
    std::vector<Mask> out;
    for (Mask m : masks) out.push_back(full_mask(n) & ~m);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace detail

// Classes of (n, n-d) obtained by complementing every class of r.
inline CensusResult dual_census(const CensusResult& r) {
    CensusResult out;
    out.n = r.n;
    out.d = r.n - r.d;
    for (const auto& c : r.classes) out.classes.push_back(orbit_of(MaskSet(r.n, out.d, detail::dual_masks(r.n, c.canonical.masks))));
    std::sort(out.classes.begin(), out.classes.end(), class_order);
    return out;
}

inline CensusRecord make_record(const CensusResult& r) {
    const CensusResult dual = dual_census(r);
    CensusRecord rec;
    rec.n = r.n;
    rec.d = r.d;
    for (const auto& c : r.classes) {
        RecordEntry e;
        e.edges = c.canonical.masks;
        e.incidence = c.incidence;
        e.stabilizer_order = c.stabilizer_order;
        if (r.n == 6 && r.d == 3) e.type = type_of(c.monomials());
        const MaskSet dual_canon = canonical_form(MaskSet(r.n, r.n - r.d, detail::dual_masks(r.n, c.canonical.masks)));
        const auto it = std::find_if(dual.classes.begin(), dual.classes.end(),
                                     [&](const OrbitClass& o) { return o.canonical == dual_canon; });
        e.dual_index = static_cast<std::size_t>(it - dual.classes.begin());
        rec.entries.push_back(std::move(e));
    }
    return rec;
}

// Rebuilds the classes a record describes; each entry must be canonical.
inline CensusResult census_from_record(const CensusRecord& rec) {
    CensusResult r;
    r.n = rec.n;
    r.d = rec.d;
    for (const auto& e : rec.entries) {
        MaskSet f(rec.n, rec.d, e.edges);
        if (canonical_form(f) != f) throw ContractViolation("record entry is not in canonical form");
        r.classes.push_back(detail::orbit_class_of_canonical(std::move(f)));
    }
    std::sort(r.classes.begin(), r.classes.end(), class_order);
    return r;
}

// One JSON object per line: a header, then one line per class.
inline std::string serialize_record(const CensusRecord& rec) {
    std::string out;
    nlohmann::json header = {{"record", "census"}, {"n", rec.n}, {"d", rec.d}, {"count", rec.entries.size()}};
    out += header.dump() + '\n';
    for (std::size_t i = 0; i < rec.entries.size(); ++i) {
        const auto& e = rec.entries[i];
        nlohmann::json line;
        line["index"] = i;
        nlohmann::json edges = nlohmann::json::array();
        for (Mask m : e.edges) edges.push_back(detail::to_hex(m));
        line["edges"] = edges;
        line["incidence"] = e.incidence;
        line["stabilizer_order"] = e.stabilizer_order;
        line["type"] = e.type ? nlohmann::json(to_string(*e.type)) : nlohmann::json(nullptr);
        line["dual_index"] = e.dual_index;
        out += line.dump() + '\n';
    }
    return out;
}

inline CensusRecord parse_record(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    CensusRecord rec;
    std::size_t expected = 0;
    bool have_header = false;
    try {
        while (std::getline(in, line)) {
            ++line_no;
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            const auto j = nlohmann::json::parse(line);
            if (!have_header) {
                if (j.value("record", "") != "census") throw ParseError("missing census header", line_no);
                rec.n = j.at("n").get<int>();
                rec.d = j.at("d").get<int>();
                expected = j.at("count").get<std::size_t>();
                have_header = true;
                continue;
            }
            if (j.at("index").get<std::size_t>() != rec.entries.size())
                throw ParseError("entry index out of sequence", line_no);
            RecordEntry e;
            for (const auto& h : j.at("edges")) e.edges.push_back(detail::from_hex(h.get<std::string>()));
            e.incidence = j.at("incidence").get<IncidenceSequence>();
            e.stabilizer_order = j.at("stabilizer_order").get<std::uint64_t>();
            if (!j.at("type").is_null()) {
                const auto t = j.at("type").get<std::string>();
                if (t == "1") e.type = StructuralType::Type1;
                else if (t == "2") e.type = StructuralType::Type2;
                else if (t == "3") e.type = StructuralType::Type3;
                else throw ParseError("unknown type tag '" + t + "'", line_no);
            }
            e.dual_index = j.at("dual_index").get<std::size_t>();
            rec.entries.push_back(std::move(e));
        }
    } catch (const nlohmann::json::exception& ex) {
        throw ParseError(std::string("malformed record line: ") + ex.what(), line_no);
    }
    if (!have_header) throw ParseError("empty record", 0);
    if (rec.entries.size() != expected) throw ParseError("record count does not match header", line_no);
    return rec;
}

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
    const auto tmp = std::filesystem::path(path.string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << text;
        if (!out.flush()) throw std::runtime_error("write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

inline std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Level checkpoints: file M_<n>_<d>_level<i>, one canonical form per line as
// space-separated hex masks. Files are written whole via rename, so any file
// present describes a complete level.
inline std::filesystem::path checkpoint_path(const std::filesystem::path& dir, int n, int d, int level) {
    return dir / ("M_" + std::to_string(n) + "_" + std::to_string(d) + "_level" + std::to_string(level));
}

inline std::filesystem::path write_checkpoint(const std::filesystem::path& dir, const LevelTable& t) {
    std::filesystem::create_directories(dir);
    std::string text;
    for (const OrbitClass* c : t.ordered()) {
        for (std::size_t j = 0; j < c->canonical.masks.size(); ++j) {
            if (j) text += ' ';
            text += detail::to_hex(c->canonical.masks[j]);
        }
        text += '\n';
    }
    const auto path = checkpoint_path(dir, t.n, t.d, t.level);
    write_text_file(path, text);
    return path;
}

inline LevelTable read_checkpoint(const std::filesystem::path& path, int n, int d, int level) {
    LevelTable t;
    t.n = n;
    t.d = d;
    t.level = level;
    std::istringstream in(read_text_file(path));
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream fields(line);
        std::vector<Mask> masks;
        std::string h;
        while (fields >> h) masks.push_back(detail::from_hex(h));
        if (masks.empty()) continue;
        if (static_cast<int>(masks.size()) != level) throw ParseError("checkpoint line has the wrong member count", line_no);
        MaskSet f(n, d, masks);
        if (canonical_form(f) != f) throw ParseError("checkpoint entry is not canonical", line_no);
        t.insert(detail::orbit_class_of_canonical(std::move(f)));
    }
    return t;
}

// Highest complete level stored in dir that a census of (n,d) can resume from.
inline std::optional<LevelTable> load_latest_checkpoint(const std::filesystem::path& dir, int n, int d) {
    if (!std::filesystem::is_directory(dir)) return std::nullopt;
    const std::regex pattern("M_" + std::to_string(n) + "_" + std::to_string(d) + "_level([0-9]+)");
    int best = 0;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        std::smatch m;
        const std::string name = entry.path().filename().string();
        if (std::regex_match(name, m, pattern)) {
            const int level = std::stoi(m[1].str());
            if (level <= n - 1) best = std::max(best, level);
        }
    }
    if (best == 0) return std::nullopt;
    return read_checkpoint(checkpoint_path(dir, n, d, best), n, d, best);
}

} // namespace cremona
