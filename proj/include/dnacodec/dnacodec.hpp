#pragma once

#include "analysis.hpp"
#include "archive_io.hpp"
#include "bits.hpp"
#include "codec.hpp"
#include "corpus.hpp"
#include "dna.hpp"
#include "errors.hpp"
#include "huffman.hpp"
#include "mapping.hpp"
#include "pipeline.hpp"
#include "randomizer.hpp"
#include "ratio.hpp"
#include "substitution.hpp"
