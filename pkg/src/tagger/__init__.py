"""BiLSTM-CRF sequence tagger: encoder, CRF, gradients, training and persistence."""
