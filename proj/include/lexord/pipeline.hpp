#pragma once

// Loading grammars and the prefixify -> binary encoding -> weak GNF pipeline,
// with words carried along so they can be given over the input alphabet.

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "lexord/error.hpp"
#include "lexord/grammar.hpp"
#include "lexord/lexorder.hpp"

namespace lexord {

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorKind::Io, "cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline Grammar load_grammar(const std::filesystem::path& path) { return parse_grammar(read_file(path)); }

struct PipelineOptions {
    std::optional<std::string> prefixify;
    bool encode_binary = false;
    bool gnf = false;
};

/// A grammar after the pipeline together with the input it came from.
class PreparedGrammar {
public:
    PreparedGrammar(Grammar input, const PipelineOptions& options) : input_(std::move(input)), options_(options) {
        Grammar g = input_;
        if (options_.prefixify)
            g = prefixify(g, *options_.prefixify);
        encoded_alphabet_size_ = g.alphabet().size();
        if (options_.encode_binary)
            g = encode_binary(g);
        if (options_.gnf && !g.weak_gnf())
            g = to_weak_gnf(g);
        final_ = std::move(g);
    }

    const Grammar& input() const { return input_; }
    const Grammar& grammar() const { return *final_; }
    const PipelineOptions& options() const { return options_; }

    /// Image of a word of the input language in the final language.
    Word lift(const Word& w) const {
        validate_word(input_, w);
        Word out = options_.prefixify ? append_bottom(w) : w;
        if (options_.encode_binary)
            out = encode_word(encoded_alphabet_size_, out);
        return out;
    }

    Word lift(std::string_view text) const { return lift(parse_word(input_.alphabet(), text)); }

    std::string render(const Word& w) const { return render_word(grammar().alphabet(), w); }

private:
    Grammar input_;
    PipelineOptions options_;
    std::optional<Grammar> final_;
    std::size_t encoded_alphabet_size_ = 0;
};

}  // namespace lexord
