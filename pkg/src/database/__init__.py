"""Census run and shard bookkeeping"""
