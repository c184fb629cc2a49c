// Small file I/O helpers shared by serialization and reporting code.
// Writes are atomic (temp file + rename) so a crash never leaves a
// half-written artifact at the target path.
#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "dqi/errors.hpp"

namespace dqi {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(in.good(), ErrorKind::parameter, "cannot open file for reading: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        require(out.good(), ErrorKind::parameter, "cannot open file for writing: " + tmp.string());
        out << content;
        out.flush();
        require(out.good(), ErrorKind::parameter, "write failed: " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    require(!ec, ErrorKind::parameter, "rename failed: " + target.string() + ": " + ec.message());
}

inline void append_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::app);
    require(out.good(), ErrorKind::parameter, "cannot open file for appending: " + path);
    out << content;
    out.flush();
    require(out.good(), ErrorKind::parameter, "append failed: " + path);
}

} // namespace dqi
