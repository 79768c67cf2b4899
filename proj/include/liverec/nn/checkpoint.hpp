#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "liverec/core/kvfile.hpp"
#include "liverec/nn/mlp.hpp"

namespace liverec::nn {

// Versioned text checkpoint container.
//
// Layout: a magic first line, then named blocks. Parameter blobs are written
// one value per line in hexfloat, so reload reproduces every bit. Tables and
// metadata reuse the key=value idiom. Agents compose their checkpoints out of
// these blocks.
//
//   liverec.checkpoint.v1
//   @meta
//   key = value
//   @mlp <name>
//   sizes = 4,8,2
//   head = identity|log_softmax
//   <one hexfloat per parameter line>
//   @table <name>
//   <key> <hexfloat>
//   @end

inline constexpr const char* kCheckpointMagic = "liverec.checkpoint.v1";

class CheckpointWriter {
public:
    CheckpointWriter() { out_ << kCheckpointMagic << '\n'; }

    void add_meta(const std::vector<std::pair<std::string, std::string>>& entries) {
        out_ << "@meta\n";
        for (const auto& [k, v] : entries) out_ << k << " = " << v << '\n';
    }

    void add_mlp(const std::string& name, const MlpModel& model) {
        out_ << "@mlp " << name << '\n';
        out_ << "sizes = " << core::join_ints(model.layer_sizes()) << '\n';
        out_ << "head = " << (model.head() == OutputHead::LogSoftmax ? "log_softmax" : "identity")
             << '\n';
        for (std::size_t l = 0; l < model.n_layers(); ++l) {
            for (double w : model.weights()[l]) out_ << core::format_double_hex(w) << '\n';
            for (double b : model.biases()[l]) out_ << core::format_double_hex(b) << '\n';
        }
    }

    void add_table(const std::string& name, const std::vector<std::pair<std::string, double>>& rows) {
        out_ << "@table " << name << '\n';
        for (const auto& [k, v] : rows) out_ << k << ' ' << core::format_double_hex(v) << '\n';
    }

    std::string str() const { return out_.str() + "@end\n"; }

    void save(const std::string& path) const {
        std::ofstream f(path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write checkpoint: " + path);
        f << str();
    }

private:
    std::ostringstream out_;
};

class CheckpointReader {
public:
    explicit CheckpointReader(std::string text) : text_(std::move(text)) {
        lines_ = core::split(text_, '\n');
        if (lines_.empty() || lines_[0] != kCheckpointMagic)
            throw std::runtime_error("not a checkpoint file (bad magic)");
        pos_ = 1;
    }

    // lines_ views into text_; relocation would dangle them.
    CheckpointReader(const CheckpointReader&) = delete;
    CheckpointReader& operator=(const CheckpointReader&) = delete;

    static CheckpointReader load(const std::string& path) {
        std::ifstream f(path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot read checkpoint: " + path);
        std::ostringstream ss;
        ss << f.rdbuf();
        return CheckpointReader(ss.str());
    }

    // Metadata must be the first block when present.
    std::vector<std::pair<std::string, std::string>> read_meta() {
        expect_block("@meta");
        std::vector<std::pair<std::string, std::string>> out;
        while (pos_ < lines_.size() && !lines_[pos_].starts_with('@')) {
            const auto line = lines_[pos_++];
            if (line.empty()) continue;
            const auto eq = line.find('=');
            if (eq == std::string_view::npos) throw std::runtime_error("checkpoint meta: bad line");
            std::string_view k = line.substr(0, eq);
            std::string_view v = line.substr(eq + 1);
            while (!k.empty() && k.back() == ' ') k.remove_suffix(1);
            while (!v.empty() && v.front() == ' ') v.remove_prefix(1);
            out.emplace_back(std::string(k), std::string(v));
        }
        return out;
    }

    MlpModel read_mlp(const std::string& name) {
        expect_block("@mlp " + name);
        auto sizes_line = next_line();
        auto head_line = next_line();
        if (!sizes_line.starts_with("sizes = ") || !head_line.starts_with("head = "))
            throw std::runtime_error("checkpoint mlp '" + name + "': malformed header");
        std::vector<int> sizes;
        for (auto part : core::split(sizes_line.substr(8), ','))
            sizes.push_back(static_cast<int>(core::parse_int(part)));
        const auto head_name = head_line.substr(7);
        const OutputHead head = head_name == "log_softmax" ? OutputHead::LogSoftmax
                              : head_name == "identity"    ? OutputHead::Identity
                                                           : throw std::runtime_error(
                                                                 "checkpoint mlp: unknown head");
        core::Rng dummy(0);
        MlpModel model(sizes, head, dummy);
        for (std::size_t l = 0; l < model.n_layers(); ++l) {
            for (double& w : model.weights()[l]) w = core::parse_double_hex(next_line());
            for (double& b : model.biases()[l]) b = core::parse_double_hex(next_line());
        }
        return model;
    }

    std::vector<std::pair<std::string, double>> read_table(const std::string& name) {
        expect_block("@table " + name);
        std::vector<std::pair<std::string, double>> out;
        while (pos_ < lines_.size() && !lines_[pos_].starts_with('@')) {
            const auto line = lines_[pos_++];
            if (line.empty()) continue;
            const auto sp = line.rfind(' ');
            if (sp == std::string_view::npos) throw std::runtime_error("checkpoint table: bad row");
            out.emplace_back(std::string(line.substr(0, sp)), core::parse_double_hex(line.substr(sp + 1)));
        }
        return out;
    }

    void expect_end() { expect_block("@end"); }

private:
    std::string_view next_line() {
        if (pos_ >= lines_.size()) throw std::runtime_error("checkpoint: unexpected end of file");
        return lines_[pos_++];
    }

    void expect_block(const std::string& header) {
        auto line = next_line();
        if (line != header)
            throw std::runtime_error("checkpoint: expected '" + header + "', found '" +
                                     std::string(line) + "'");
    }

    std::string text_;
    std::vector<std::string_view> lines_;
    std::size_t pos_ = 0;
};

}  // namespace liverec::nn
