#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "tlms/fan.hpp"
#include "tlms/kaneyama.hpp"
#include "tlms/multisection.hpp"
#include "tlms/wallcross.hpp"

namespace tlms {

/**
 * Contents of a tlms-v1 text file.
 *
 * Indices are 0-based here and 1-based in the text. Kaneyama matrices are keyed
 * by ordered cone pairs; only the pairs present in the file are stored.
 */
struct Document {
    Fan2D fan;
    std::optional<MultiSection> multisection;
    std::map<std::pair<std::size_t, std::size_t>, RatMatrix> kaneyama;
    std::optional<WallFactorSet> wall;
};

/// Throws ParseError with 1-based line and column. Cells are not validated; see validate().
Document parse_document(std::string_view text);
Document read_document(const std::string& path);
/// Canonical text: cells form, every section present in the document, one blank line between sections.
std::string emit_document(const Document& doc);

/// Full Kaneyama data from the stored pairs; forward adjacent pairs suffice.
KaneyamaData kaneyama_data(const Document& doc);
void set_kaneyama(Document& doc, const KaneyamaData& g);

}  // namespace tlms
