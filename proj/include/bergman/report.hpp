#pragma once

// Check records and report documents (JSON and CSV). Needs nlohmann/json and
// OpenSSL (SHA-1 for the git-style config digests).

#include <cstdio>
#include <iomanip>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include <openssl/evp.h>

#include "bergman/error.hpp"

namespace bergman {

/// Git blob id of `content`: SHA-1 over "blob <size>\0" followed by the bytes.
inline std::string git_blob_digest(std::string_view content) {
    const std::string header = "blob " + std::to_string(content.size()) + '\0';
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    if (!ctx) throw std::runtime_error("EVP_MD_CTX_new failed");
    const bool ok = EVP_DigestInit_ex(ctx, EVP_sha1(), nullptr) == 1 &&
                    EVP_DigestUpdate(ctx, header.data(), header.size()) == 1 &&
                    EVP_DigestUpdate(ctx, content.data(), content.size()) == 1 &&
                    EVP_DigestFinal_ex(ctx, md, &len) == 1;
    EVP_MD_CTX_free(ctx);
    if (!ok) throw std::runtime_error("SHA-1 digest failed");
    std::ostringstream hex;
    for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int{md[i]};
    return hex.str();
}

/// Digest of a JSON config in canonical form (sorted keys, compact dump).
inline std::string config_digest(const nlohmann::json& config) { return git_blob_digest(config.dump()); }

struct CheckRecord {
    std::string id;
    std::string description;
    std::string inputs_digest;
    nlohmann::json observed = nlohmann::json::object();
    bool pass = false;
    double tolerance = 0.0;
    double seconds = 0.0;
};

inline void to_json(nlohmann::json& j, const CheckRecord& r) {
    j = {{"id", r.id},         {"description", r.description}, {"inputs_digest", r.inputs_digest},
         {"observed", r.observed}, {"pass", r.pass},           {"tolerance", r.tolerance},
         {"seconds", r.seconds}};
}

class ReportDoc {
public:
    explicit ReportDoc(std::string title = "report", std::string config_digest = {})
        : title_(std::move(title)), config_digest_(std::move(config_digest)) {}

    void add(CheckRecord r) {
        if (r.inputs_digest.empty()) r.inputs_digest = config_digest_;
        records_.push_back(std::move(r));
    }

    const std::vector<CheckRecord>& records() const noexcept { return records_; }
    const std::string& config_digest() const noexcept { return config_digest_; }

    std::size_t passed() const {
        std::size_t n = 0;
        for (const auto& r : records_) n += r.pass ? 1 : 0;
        return n;
    }
    bool all_pass() const { return passed() == records_.size(); }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["title"] = title_;
        j["config_digest"] = config_digest_;
        j["records"] = records_;
        j["summary"] = {{"checks", records_.size()}, {"passed", passed()}, {"failed", records_.size() - passed()}};
        return j;
    }

    /// One row per record; `observed` is embedded as compact JSON.
    std::string to_csv() const {
        std::ostringstream out;
        out << "id,pass,tolerance,seconds,inputs_digest,observed\n";
        for (const auto& r : records_) {
            out << csv_field(r.id) << ',' << (r.pass ? "pass" : "fail") << ',' << r.tolerance << ',' << r.seconds
                << ',' << r.inputs_digest << ',' << csv_field(r.observed.dump()) << '\n';
        }
        return out.str();
    }

    /// Human-readable table, one line per record.
    std::string summary_table() const {
        std::ostringstream out;
        for (const auto& r : records_) {
            char line[512];
            std::snprintf(line, sizeof line, "[%s] %-28s %8.2fs  %s\n", r.pass ? "PASS" : "FAIL", r.id.c_str(),
                          r.seconds, r.description.c_str());
            out << line;
        }
        out << passed() << "/" << records_.size() << " checks passed\n";
        return out.str();
    }

private:
    static std::string csv_field(const std::string& s) {
        std::string q = "\"";
        for (char c : s) {
            if (c == '"') q += '"';
            q += c;
        }
        return q + '"';
    }

    std::string title_;
    std::string config_digest_;
    std::vector<CheckRecord> records_;
};

}  // namespace bergman
